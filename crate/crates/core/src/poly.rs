//! Univariate complex polynomials: evaluation and simultaneous root finding.

use crate::C64;

/// Horner evaluation of `c[0] + c[1] x + … + c[n] xⁿ`.
pub fn eval(c: &[C64], x: C64) -> C64 {
    c.iter().rev().fold(C64::new(0.0, 0.0), |acc, &a| acc * x + a)
}

/// Value and first derivative.
pub fn eval_with_derivative(c: &[C64], x: C64) -> (C64, C64) {
    let mut p = C64::new(0.0, 0.0);
    let mut dp = C64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * x + p;
        p = p * x + a;
    }
    (p, dp)
}

/// Drops vanishing leading coefficients (relative to the largest one).
pub fn trim(c: &[C64]) -> Vec<C64> {
    let scale = c.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let mut v = c.to_vec();
    while let Some(last) = v.last() {
        if last.norm() <= 1e-300_f64.max(scale * 1e-15) && v.len() > 1 {
            v.pop();
        } else {
            break;
        }
    }
    v
}

/// All complex roots of a polynomial given by ascending coefficients,
/// with multiplicity. Uses Aberth–Ehrlich iteration followed by a few
/// Newton steps per root.
pub fn roots(coeffs: &[C64]) -> Vec<C64> {
    let c = trim(coeffs);
    let n = c.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = c[n];
    let monic: Vec<C64> = c.iter().map(|&a| a / lead).collect();
    if n == 1 {
        return vec![-monic[0]];
    }
    if n == 2 {
        let (a, b) = quadratic_roots(C64::new(1.0, 0.0), monic[1], monic[0]);
        return vec![a, b];
    }
    // Cauchy bound for the starting circle
    let bound = 1.0 + monic[..n].iter().map(|z| z.norm()).fold(0.0, f64::max);
    let radius = bound.min(1e6).max(1e-3) * 0.5;
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let t = 2.0 * std::f64::consts::PI * (k as f64 + 0.25) / n as f64 + 0.4;
            C64::from_polar(radius, t)
        })
        .collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let (p, dp) = eval_with_derivative(&monic, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = C64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += d.inv();
                    }
                }
            }
            let denom = C64::new(1.0, 0.0) - ratio * s;
            let step = if denom.norm() > 0.0 { ratio / denom } else { ratio };
            if step.re.is_finite() && step.im.is_finite() {
                z[i] -= step;
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-16 {
            break;
        }
    }
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = eval_with_derivative(&monic, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let next = *zi - p / dp;
            if eval(&monic, next).norm() < p.norm() {
                *zi = next;
            } else {
                break;
            }
        }
    }
    z
}

/// Roots of `a t² + b t + c` with the cancellation-free formula.
pub fn quadratic_roots(a: C64, b: C64, c: C64) -> (C64, C64) {
    if a.norm() == 0.0 {
        let r = -c / b;
        return (r, r);
    }
    let disc = (b * b - 4.0 * a * c).sqrt();
    let q1 = -b - disc;
    let q2 = -b + disc;
    let q = if q1.norm() >= q2.norm() { q1 } else { q2 } * 0.5;
    if q.norm() == 0.0 {
        return (C64::new(0.0, 0.0), C64::new(0.0, 0.0));
    }
    (q / a, c / q)
}

/// Product of two polynomials.
pub fn mul(a: &[C64], b: &[C64]) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Sum of two polynomials.
pub fn add(a: &[C64], b: &[C64]) -> Vec<C64> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|i| a.get(i).copied().unwrap_or_default() + b.get(i).copied().unwrap_or_default())
        .collect()
}

/// Polynomial times a scalar.
pub fn scale(a: &[C64], s: C64) -> Vec<C64> {
    a.iter().map(|&x| x * s).collect()
}
