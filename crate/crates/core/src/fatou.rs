//! Fatou-set certificates by monotone escape.
//!
//! Near `(u, u, u)` with `|u|` large, every involution increases the modulus
//! of the coordinate it changes, so orbits under the whole group run off to
//! infinity and form a normal family. [`fatou_ball`] gives an explicit ball
//! where this holds and [`certify_monotone_escape`] checks the mechanism
//! along every reduced word up to a finite depth.

use crate::action::abc_as;
use crate::params::ParameterQuadruple;
use crate::poly;
use crate::scalar::{Scalar, WideComplex};
use crate::word::{Letter, Word};
use crate::{Error, Point, Result, C64};
use rayon::prelude::*;
use serde::Serialize;

/// Ball around `(u, u, u)`, `|u| = R`, on which monotone escape is guaranteed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FatouBall {
    pub r: f64,
    #[serde(rename = "R")]
    pub big_r: f64,
    pub u_modulus: f64,
    pub epsilon: f64,
}

impl FatouBall {
    pub fn center(&self, u: C64) -> Point {
        [u, u, u]
    }
}

/// `ε = min{R − (2 + √r), R + 1 − √(4R + r + 1)}` with `r = max |A|, |B|, |C|`.
pub fn fatou_ball(a: C64, b: C64, c: C64, big_r: f64) -> Result<FatouBall> {
    let r = a.norm().max(b.norm()).max(c.norm());
    let min = 2.0 + r.sqrt();
    if !(big_r > min) {
        return Err(Error::RadiusTooSmall { radius: big_r, min });
    }
    let epsilon = (big_r - min).min(big_r + 1.0 - (4.0 * big_r + r + 1.0).sqrt());
    Ok(FatouBall { r, big_r, u_modulus: big_r, epsilon })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FatouStatus {
    Certified,
    FailedWithWitness,
    Inconclusive,
}

/// Outcome of the finite-depth check. `Certified` means "monotone escape
/// verified along every reduced word up to `depth`"; only inside a
/// [`FatouBall`] does this reflect a theorem about the Fatou set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FatouCertificate {
    pub status: FatouStatus,
    pub witness_word: Option<Word>,
    pub depth: usize,
    /// `log10` of the smallest coordinate modulus seen at each word length.
    pub modulus_log: Vec<f64>,
    pub words_checked: u64,
}

/// Relative slack under which a comparison is declared undecidable.
const TIE: f64 = 1e-12;

#[derive(Debug, Clone)]
struct Walk {
    failure: Option<Vec<Letter>>,
    tie: Option<Vec<Letter>>,
    min_log: Vec<f64>,
    count: u64,
}

impl Walk {
    fn new(depth: usize) -> Self {
        Walk { failure: None, tie: None, min_log: vec![f64::INFINITY; depth + 1], count: 0 }
    }
}

fn min_ln(q: &[WideComplex; 3]) -> f64 {
    q.iter().map(|z| z.ln_abs()).fold(f64::INFINITY, f64::min)
}

/// Applies `l` to `q`, checks both conditions, then explores the subtree.
fn visit(abc: &[WideComplex; 3], q: &[WideComplex; 3], l: Letter, path: &mut Vec<Letter>, depth: usize, threshold_ln: f64, w: &mut Walk) {
    let i = l.index();
    let next = crate::action::apply_letter_s(abc, l, q);
    path.push(l);
    w.count += 1;
    let grow = next[i].ln_abs() - q[i].ln_abs();
    let m = min_ln(&next);
    let level = path.len();
    w.min_log[level] = w.min_log[level].min(m);
    let grow_tol = TIE * (1.0 + q[i].ln_abs().abs());
    let floor_tol = TIE * (1.0 + threshold_ln.abs());
    let floor_gap = m - threshold_ln;
    if grow.is_nan() || grow < -grow_tol || floor_gap < -floor_tol {
        w.failure = Some(path.clone());
    } else {
        if (grow.abs() <= grow_tol || floor_gap.abs() <= floor_tol) && w.tie.is_none() {
            w.tie = Some(path.clone());
        }
        if level < depth {
            for k in Letter::ALL {
                if k != l && w.failure.is_none() {
                    visit(abc, &next, k, path, depth, threshold_ln, w);
                }
            }
        }
    }
    path.pop();
}

fn word_from_path(path: &[Letter]) -> Word {
    // path lists letters in the order applied
    Word::reduce(path.iter().rev().copied())
}

/// Checks every reduced word up to `depth` letters: each applied letter must
/// not decrease the modulus of the coordinate it changes, and the smallest
/// coordinate modulus must stay at least `2 + √r`.
pub fn certify_monotone_escape(p: &ParameterQuadruple, q: &Point, depth: usize) -> FatouCertificate {
    let abc: [WideComplex; 3] = abc_as(p);
    let start = q.map(WideComplex::from_c64);
    let threshold_ln = (2.0 + p.r().sqrt()).ln();
    let root_min = min_ln(&start);
    let ln10 = std::f64::consts::LN_10;
    if root_min < threshold_ln - TIE * (1.0 + threshold_ln.abs()) {
        return FatouCertificate {
            status: FatouStatus::FailedWithWitness,
            witness_word: Some(Word::identity()),
            depth,
            modulus_log: vec![root_min / ln10],
            words_checked: 1,
        };
    }
    let walks: Vec<Walk> = Letter::ALL
        .par_iter()
        .map(|&first| {
            let mut w = Walk::new(depth);
            if depth > 0 {
                visit(&abc, &start, first, &mut Vec::with_capacity(depth), depth, threshold_ln, &mut w);
            }
            w
        })
        .collect();
    let mut modulus_log = vec![f64::INFINITY; depth + 1];
    modulus_log[0] = root_min;
    let mut count = 1;
    for w in &walks {
        for (k, v) in w.min_log.iter().enumerate().skip(1) {
            modulus_log[k] = modulus_log[k].min(*v);
        }
        count += w.count;
    }
    let modulus_log: Vec<f64> = modulus_log.iter().map(|v| v / ln10).collect();
    if let Some(f) = walks.iter().find_map(|w| w.failure.as_ref()) {
        return FatouCertificate {
            status: FatouStatus::FailedWithWitness,
            witness_word: Some(word_from_path(f)),
            depth,
            modulus_log,
            words_checked: count,
        };
    }
    if let Some(t) = walks.iter().find_map(|w| w.tie.as_ref()) {
        return FatouCertificate {
            status: FatouStatus::Inconclusive,
            witness_word: Some(word_from_path(t)),
            depth,
            modulus_log,
            words_checked: count,
        };
    }
    FatouCertificate { status: FatouStatus::Certified, witness_word: None, depth, modulus_log, words_checked: count }
}

/// Finite-depth check of the two Bowditch-type orbit conditions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BQReport {
    /// No coordinate of any explored image lies in the real interval `[−2, 2]`.
    pub condition1: bool,
    /// Explored even words whose image has a coordinate in the closed disk of radius 2.
    pub condition2_violations: u64,
    pub depth: usize,
    pub words_explored: u64,
    /// The radius-2 disk is only the right threshold for `A = B = C = 0`;
    /// otherwise condition 2 is reported as a heuristic.
    pub radius2_heuristic: bool,
}

fn in_real_interval(z: WideComplex) -> bool {
    let c = z.to_c64();
    c.im.abs() <= 1e-12 && c.re.abs() <= 2.0
}

/// Evaluates every even word up to `depth` letters on `q`.
pub fn bq_orbit_test(p: &ParameterQuadruple, q: &Point, depth: usize) -> BQReport {
    let abc: [WideComplex; 3] = abc_as(p);
    let start = q.map(WideComplex::from_c64);
    let ln2 = 2f64.ln();
    let mut condition1 = true;
    let mut violations = 0u64;
    let mut explored = 0u64;
    // explicit stack of (point, last letter, length)
    let mut stack: Vec<([WideComplex; 3], Option<Letter>, usize)> = vec![(start, None, 0)];
    while let Some((pt, last, len)) = stack.pop() {
        if len % 2 == 0 {
            explored += 1;
            if pt.iter().any(|&z| in_real_interval(z)) {
                condition1 = false;
            }
            if pt.iter().any(|&z| z.ln_abs() <= ln2) {
                violations += 1;
            }
        }
        if len == depth {
            continue;
        }
        for l in Letter::ALL {
            if Some(l) != last {
                stack.push((crate::action::apply_letter_s(&abc, l, &pt), Some(l), len + 1));
            }
        }
    }
    let radius2_heuristic = p.abc().iter().any(|z| z.norm() != 0.0);
    BQReport { condition1, condition2_violations: violations, depth, words_explored: explored, radius2_heuristic }
}

/// A root of `u³ + 3u² = D` with `|u| > 2`, so that `(u, u, u)` lies on
/// `S_{0,0,0,D}` far enough out to seed a Fatou ball. None exists at `D = 4`.
pub fn cubic_escape_root(d: C64) -> Result<C64> {
    if (d - 4.0).norm() < 1e-14 {
        return Err(Error::NoEscapeRoot);
    }
    let coeffs = [-d, C64::new(0.0, 0.0), C64::new(3.0, 0.0), C64::new(1.0, 0.0)];
    let mut best = poly::roots(&coeffs)
        .into_iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .ok_or(Error::NoEscapeRoot)?;
    for _ in 0..4 {
        let (f, df) = poly::eval_with_derivative(&coeffs, best);
        if df.norm() == 0.0 {
            break;
        }
        best -= f / df;
    }
    if best.norm() <= 2.0 {
        return Err(Error::NoEscapeRoot);
    }
    Ok(best)
}

/// A root `u` of `u³ + 3u² − (A+B+C)u − D` with `|u| > 2 + √r`, so that
/// `(u, u, u)` lies on the surface beyond the escape radius. At
/// `A = B = C = 0` this is [`cubic_escape_root`].
pub fn diagonal_escape_root(p: &ParameterQuadruple) -> Result<C64> {
    if p.abc().iter().all(|z| z.norm() == 0.0) {
        return cubic_escape_root(p.d);
    }
    let coeffs = [-p.d, -(p.a + p.b + p.c), C64::new(3.0, 0.0), C64::new(1.0, 0.0)];
    let mut best = poly::roots(&coeffs)
        .into_iter()
        .max_by(|a, b| a.norm().total_cmp(&b.norm()))
        .ok_or(Error::NoEscapeRoot)?;
    for _ in 0..4 {
        let (f, df) = poly::eval_with_derivative(&coeffs, best);
        if df.norm() == 0.0 {
            break;
        }
        best -= f / df;
    }
    if best.norm() <= 2.0 + p.r().sqrt() {
        return Err(Error::NoEscapeRoot);
    }
    Ok(best)
}

/// `p_a(u) = u³ + 3u² − 3(2a+4)u + a² + 8a + 8`; `(u,u,u)` lies on the
/// Dubrovin–Mazzocco surface exactly when `p_a(u) = 0`.
pub fn dm_polynomial(a: f64, u: f64) -> f64 {
    u * u * u + 3.0 * u * u - 3.0 * (2.0 * a + 4.0) * u + a * a + 8.0 * a + 8.0
}

/// The real root `u₀ < −(2 + √(2a+4))` of [`dm_polynomial`].
pub fn dm_fatou_root(a: f64) -> Result<f64> {
    let hi0 = -(2.0 + (2.0 * a + 4.0).max(0.0).sqrt());
    let lo0 = -50.0;
    let f = |u: f64| dm_polynomial(a, u);
    let (mut lo, mut hi) = (lo0, hi0);
    if !(f(lo) < 0.0 && f(hi) > 0.0) {
        return Err(Error::BracketFailure { lo: lo0, hi: hi0 });
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
        if hi - lo < 1e-15 * (1.0 + mid.abs()) {
            break;
        }
    }
    let mut u = 0.5 * (lo + hi);
    for _ in 0..3 {
        let df = 3.0 * u * u + 6.0 * u - 3.0 * (2.0 * a + 4.0);
        if df == 0.0 {
            break;
        }
        let next = u - f(u) / df;
        if f(next).abs() < f(u).abs() {
            u = next;
        }
    }
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;
    use rand::{Rng, SeedableRng};

    #[test]
    fn diagonal_root_matches_special_families() {
        let d = C64::new(10.0, 0.0);
        assert_eq!(diagonal_escape_root(&ParameterQuadruple::torus(d)).unwrap(), cubic_escape_root(d).unwrap());
        for a in [-1.5, 0.0, 1.2] {
            let (p, _) = ParameterQuadruple::dm(a);
            let u = diagonal_escape_root(&p).unwrap();
            assert!((u.re - dm_fatou_root(a).unwrap()).abs() < 1e-9 && u.im.abs() < 1e-9);
        }
    }

    #[test]
    fn ball_radius_examples() {
        let z = re(0.0);
        let b = fatou_ball(z, z, z, 3.0).unwrap();
        assert!((b.epsilon - (4.0 - 13f64.sqrt())).abs() < 1e-15);
        let b = fatou_ball(z, z, z, 2.5).unwrap();
        assert!((b.epsilon - (3.5 - 11f64.sqrt())).abs() < 1e-15);
        let four = re(4.0);
        let b = fatou_ball(four, four, four, 5.0).unwrap();
        // R − (2 + √4) = 1 and R + 1 − √(4R + r + 1) = 6 − √25 = 1
        assert!((b.epsilon - 1.0).abs() < 1e-15);
        assert!(matches!(fatou_ball(z, z, z, 2.0), Err(Error::RadiusTooSmall { .. })));
    }

    #[test]
    fn certificate_examples() {
        let mk = ParameterQuadruple::markoff();
        let q = [re(3.0); 3];
        let c = certify_monotone_escape(&mk, &q, 1);
        assert_eq!(c.status, FatouStatus::Certified);
        let c = certify_monotone_escape(&mk, &q, 10);
        assert_eq!(c.status, FatouStatus::Certified);
        assert_eq!(c.words_checked, crate::word::count_words(10, crate::word::Parity::GammaStar));
        let c = certify_monotone_escape(&mk, &[re(0.0); 3], 1);
        assert_eq!(c.status, FatouStatus::FailedWithWitness);
        assert!(c.witness_word.is_some());
    }

    #[test]
    fn failure_witness_is_a_real_violation() {
        let mk = ParameterQuadruple::markoff();
        // s_z sends z = -4 to 4 - 4.41 = -0.41
        let c = certify_monotone_escape(&mk, &[re(2.1), re(2.1), re(-4.0)], 4);
        assert_eq!(c.status, FatouStatus::FailedWithWitness);
        assert_eq!(c.witness_word.unwrap().to_string(), "z");
    }

    #[test]
    fn random_points_in_the_ball_are_certified() {
        let mk = ParameterQuadruple::markoff();
        let ball = fatou_ball(re(0.0), re(0.0), re(0.0), 3.0).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let mut d = [re(0.0); 3];
            loop {
                for z in d.iter_mut() {
                    *z = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                }
                if crate::norm3(&d) < 1.0 {
                    break;
                }
            }
            let q = [re(3.0) + d[0] * ball.epsilon, re(3.0) + d[1] * ball.epsilon, re(3.0) + d[2] * ball.epsilon];
            let c = certify_monotone_escape(&mk, &q, 10);
            assert_eq!(c.status, FatouStatus::Certified);
            // first-step inequality from the construction
            let sx = crate::action::apply_letter(&mk, Letter::X, &q);
            let (r, e) = (ball.big_r, ball.epsilon);
            assert!(sx[0].norm() > (r - e).powi(2) - (r + e) - ball.r);
            assert!((r - e).powi(2) - (r + e) - ball.r >= r + e - 1e-12);
        }
    }

    #[test]
    fn certificate_is_monotone_in_depth() {
        let mk = ParameterQuadruple::markoff();
        let q = [C64::new(3.1, 0.05), re(2.9), re(3.0)];
        for d in 0..8 {
            assert_eq!(certify_monotone_escape(&mk, &q, d).status, FatouStatus::Certified);
        }
    }

    #[test]
    fn bq_examples() {
        let mk = ParameterQuadruple::markoff();
        let r = bq_orbit_test(&mk, &[re(3.0); 3], 8);
        assert!(r.condition1);
        assert_eq!(r.condition2_violations, 0);
        assert!(!r.radius2_heuristic);
        let r = bq_orbit_test(&ParameterQuadruple::picard(), &[re(-2.0); 3], 4);
        assert!(!r.condition1);
        let r = bq_orbit_test(&mk, &[re(0.0), re(1.0), C64::new(0.0, 1.0)], 0);
        assert!(!r.condition1);
        assert_eq!(r.words_explored, 1);
    }

    #[test]
    fn bq_violations_grow_with_depth() {
        let p = ParameterQuadruple::new(re(0.1), re(0.0), re(0.0), re(0.3));
        let q = [C64::new(0.5, 0.5), re(1.0), re(-1.5)];
        let mut prev = 0;
        for d in 0..7 {
            let r = bq_orbit_test(&p, &q, d);
            assert!(r.condition2_violations >= prev);
            prev = r.condition2_violations;
            assert!(r.radius2_heuristic);
        }
    }

    #[test]
    fn escape_root_examples() {
        assert!((cubic_escape_root(re(0.0)).unwrap() + 3.0).norm() < 1e-12);
        assert_eq!(cubic_escape_root(re(4.0)), Err(Error::NoEscapeRoot));
        let u = cubic_escape_root(re(30.0)).unwrap();
        assert!(u.norm() > 2.0);
        assert!((u * u * u + u * u * 3.0 - 30.0).norm() < 1e-10);
        let u = cubic_escape_root(re(20.0)).unwrap();
        assert!(u.norm() > 2.0);
    }

    #[test]
    fn dm_root_examples() {
        assert!(dm_polynomial(0.0, -4.0) > 0.0 && dm_polynomial(0.0, -6.0) < 0.0);
        let u = dm_fatou_root(0.0).unwrap();
        assert!(u > -6.0 && u < -5.0);
        assert!(u < -4.0);
        assert!(dm_polynomial(0.0, u).abs() < 1e-12);
        for a in [-1.9, -1.0, 0.5, 1.9] {
            let u = dm_fatou_root(a).unwrap();
            assert!(u < -(2.0 + (2.0 * a + 4.0).sqrt()));
            assert!(dm_polynomial(a, u).abs() < 1e-10);
            let (p, _) = ParameterQuadruple::dm(a);
            let res = crate::surface::surface_residual(&p, &[re(u); 3]);
            assert!(res.norm() < 1e-10);
        }
    }
}
