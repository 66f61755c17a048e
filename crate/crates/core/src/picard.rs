//! Exact cross-checks at the Picard parameters `(0, 0, 0, 4)`.
//!
//! There the surface is the image of `ℂ* × ℂ*` under
//! `Φ(u, v) = (−u − 1/u, −v − 1/v, −u/v − v/u)`, and every word map `f_M`
//! lifts to the monomial map `η_M(u, v) = (u^{m₁₁} v^{m₁₂}, u^{m₂₁} v^{m₂₂})`.

use crate::action::apply_letter_s;
use crate::fixed::{newton_fixed_points, FixedKind, SeedStrategy};
use crate::infinity::apply_letter_on_surface;
use crate::params::ParameterQuadruple;
use crate::poly;
use crate::word::{classify, to_sl2, word_for_matrix, ElementKind, IntegerMatrix2, Word};
use crate::{cfmt, dist3, norm3, Error, Point, Result, C64};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// A point of `ℂ* × ℂ*`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorusPoint {
    #[serde(with = "cfmt::complex")]
    pub u: C64,
    #[serde(with = "cfmt::complex")]
    pub v: C64,
}

impl TorusPoint {
    pub fn new(u: C64, v: C64) -> Result<Self> {
        if u == C64::new(0.0, 0.0) || v == C64::new(0.0, 0.0) {
            return Err(Error::ZeroCoordinate);
        }
        Ok(TorusPoint { u, v })
    }

    /// `(u, v) ↦ (1/u, 1/v)`, the deck involution of `Φ`.
    pub fn inverse(&self) -> TorusPoint {
        TorusPoint { u: self.u.inv(), v: self.v.inv() }
    }

    fn dist(&self, o: &TorusPoint) -> f64 {
        ((self.u - o.u).norm_sqr() + (self.v - o.v).norm_sqr()).sqrt()
    }
}

pub fn phi(t: &TorusPoint) -> Result<Point> {
    let TorusPoint { u, v } = *t;
    if u == C64::new(0.0, 0.0) || v == C64::new(0.0, 0.0) {
        return Err(Error::ZeroCoordinate);
    }
    Ok([-u - u.inv(), -v - v.inv(), -u / v - v / u])
}

/// `∂Φ/∂(u, v)` as a 3×2 matrix.
pub fn phi_jacobian(t: &TorusPoint) -> [[C64; 2]; 3] {
    let TorusPoint { u, v } = *t;
    let zero = C64::new(0.0, 0.0);
    [
        [-1.0 + (u * u).inv(), zero],
        [zero, -1.0 + (v * v).inv()],
        [-v.inv() + v / (u * u), u / (v * v) - u.inv()],
    ]
}

/// `(±1, ±1)`, where `Φ` fails to be a local immersion.
pub fn phi_critical_points() -> [TorusPoint; 4] {
    let c = |a: f64, b: f64| TorusPoint { u: C64::new(a, 0.0), v: C64::new(b, 0.0) };
    [c(1.0, 1.0), c(-1.0, 1.0), c(1.0, -1.0), c(-1.0, -1.0)]
}

fn exponent(b: &BigInt) -> Result<i32> {
    b.to_i32().ok_or_else(|| Error::InvalidInput("monomial exponent out of range".into()))
}

/// `η_M(u, v) = (u^{m₁₁} v^{m₁₂}, u^{m₂₁} v^{m₂₂})`.
pub fn eta(m: &IntegerMatrix2, t: &TorusPoint) -> Result<TorusPoint> {
    let TorusPoint { u, v } = TorusPoint::new(t.u, t.v)?;
    let (a, b, c, d) = (exponent(&m.m11)?, exponent(&m.m12)?, exponent(&m.m21)?, exponent(&m.m22)?);
    let (x, y) = (u.powi(a) * v.powi(b), u.powi(c) * v.powi(d));
    let usable = |z: C64| z.is_finite() && z.norm() > f64::MIN_POSITIVE;
    if !(usable(x) && usable(y)) {
        return Err(Error::InvalidInput(format!("η_M({}, {}) leaves the double range", t.u, t.v)));
    }
    TorusPoint::new(x, y)
}

/// A word applied at the Picard parameters, taking small roots from the
/// product of roots where the direct formula would cancel.
pub fn apply_word_picard(w: &Word, q: &Point) -> Point {
    let zero = C64::new(0.0, 0.0);
    let abc = [zero; 3];
    let d = C64::new(4.0, 0.0);
    let mut r = *q;
    for l in w.application_order() {
        r = apply_letter_on_surface(&abc, d, l, &r, |a, b| a / b);
    }
    r
}

/// Samples with `0.2 ≤ |u|, |v| ≤ 5`, log-uniform in modulus.
pub fn annulus_samples(n: usize, seed: u64) -> Vec<TorusPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = (0.2f64.ln(), 5f64.ln());
    let mut draw = move || C64::from_polar(rng.gen_range(lo..hi).exp(), rng.gen_range(0.0..std::f64::consts::TAU));
    (0..n).map(|_| TorusPoint { u: draw(), v: draw() }).collect()
}

/// `max ‖Φ(η_M(t)) − f_M(Φ(t))‖ / (1 + ‖Φ(η_M(t))‖)` over the samples.
pub fn semiconjugacy_residual(w: &Word, samples: &[TorusPoint]) -> Result<f64> {
    let m = to_sl2(w)?;
    samples
        .par_iter()
        .map(|t| {
            let up = phi(&eta(&m, t)?)?;
            let down = apply_word_picard(w, &phi(t)?);
            let r = dist3(&up, &down) / (1.0 + norm3(&up));
            Ok(if r.is_nan() { f64::INFINITY } else { r })
        })
        .try_reduce(|| 0.0, |a, b| Ok(a.max(b)))
}

/// [`semiconjugacy_residual`] over `samples` annulus points.
pub fn verify_semiconjugacy(w: &Word, samples: usize) -> Result<f64> {
    semiconjugacy_residual(w, &annulus_samples(samples, 0))
}

/// The four singular points of the Picard surface.
pub fn cayley_points() -> [[i64; 3]; 4] {
    [[-2, -2, -2], [-2, 2, 2], [2, -2, 2], [2, 2, -2]]
}

type BigMat3 = [[BigInt; 3]; 3];

fn big_identity() -> BigMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| if i == j { BigInt::one() } else { BigInt::zero() }))
}

fn big_mul(a: &BigMat3, b: &BigMat3) -> BigMat3 {
    std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| &a[i][k] * &b[k][j]).sum()))
}

/// Value and Jacobian of a word at an integer point for integer `(A, B, C)`,
/// in exact arithmetic.
pub fn exact_jet(abc: &[i64; 3], w: &Word, q: &[i64; 3]) -> ([BigInt; 3], BigMat3) {
    let mut r: [BigInt; 3] = q.map(BigInt::from);
    let mut jac = big_identity();
    for l in w.application_order() {
        let i = l.index();
        let (j, k) = l.others();
        let mut step = big_identity();
        step[i][i] = BigInt::from(-1);
        step[i][j] = -r[k].clone();
        step[i][k] = -r[j].clone();
        jac = big_mul(&step, &jac);
        r[i] = BigInt::from(abc[i]) - &r[i] - &r[j] * &r[k];
    }
    (r, jac)
}

/// Characteristic polynomial coefficients `(c₀, c₁, c₂, c₃)` with
/// `det(t − J) = c₀ + c₁ t + c₂ t² + c₃ t³`.
fn char_poly(j: &BigMat3) -> [BigInt; 4] {
    let tr: BigInt = (0..3).map(|i| j[i][i].clone()).sum();
    let minors: BigInt = (0..3)
        .map(|i| {
            let (a, b) = ((i + 1) % 3, (i + 2) % 3);
            &j[a][a] * &j[b][b] - &j[a][b] * &j[b][a]
        })
        .sum();
    let det: BigInt = &j[0][0] * (&j[1][1] * &j[2][2] - &j[1][2] * &j[2][1])
        - &j[0][1] * (&j[1][0] * &j[2][2] - &j[1][2] * &j[2][0])
        + &j[0][2] * (&j[1][0] * &j[2][1] - &j[1][1] * &j[2][0]);
    [-det, minors, -tr, BigInt::one()]
}

fn to_f64(b: &BigInt) -> f64 {
    b.to_f64().unwrap_or(f64::NAN)
}

/// Eigenvalues of the Jacobian of `f_M` at a Cayley point, sorted by
/// modulus. They are the roots of the exact integer characteristic
/// polynomial, which keeps the small eigenvalue accurate.
pub fn sing_pt_eigenvalues(m: &IntegerMatrix2, point: &[i64; 3]) -> Result<[C64; 3]> {
    let w = word_for_matrix(m)?;
    let (value, jac) = exact_jet(&[0, 0, 0], &w, point);
    if value.iter().zip(point).any(|(a, &b)| *a != BigInt::from(b)) {
        return Err(Error::NotFixedPoint(f64::NAN));
    }
    let c = char_poly(&jac).map(|b| C64::new(to_f64(&b), 0.0));
    let mut r = poly::roots(&c);
    // Newton polish each root on the exact coefficients
    for z in r.iter_mut() {
        for _ in 0..3 {
            let (f, df) = poly::eval_with_derivative(&c, *z);
            if df.norm() > 0.0 {
                *z -= f / df;
            }
        }
    }
    r.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    Ok([r[0], r[1], r[2]])
}

/// `{μ⁻², 1, μ²}` for the eigenvalues `μ^{±1}` of `M`, sorted by modulus.
pub fn predicted_sing_eigenvalues(m: &IntegerMatrix2) -> [C64; 3] {
    let [mu, _] = matrix_eigenvalues(m);
    let mut v = [mu * mu, C64::new(1.0, 0.0), (mu * mu).inv()];
    v.sort_by(|a, b| a.norm().total_cmp(&b.norm()));
    v
}

/// Eigenvalues of `M`, the larger modulus first.
pub fn matrix_eigenvalues(m: &IntegerMatrix2) -> [C64; 2] {
    let t = C64::new(to_f64(&m.trace()), 0.0);
    let s = (t * t - 4.0).sqrt();
    let (a, b) = ((t + s) / 2.0, (t - s) / 2.0);
    if a.norm() >= b.norm() { [a, b] } else { [b, a] }
}

/// Diagonal of the exact Jacobian at a Cayley point against the closed forms.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SingularIdentityReport {
    pub point: [i64; 3],
    /// `n₁₁, n₂₂, n₃₃` as decimal strings.
    pub diagonal: [String; 3],
    pub trace: String,
    /// `m₁₁² + m₂₂² + 2m₁₂m₂₁ + 1`.
    pub expected_trace: String,
    pub trace_ok: bool,
    /// The entry formulas at `(−2, −2, −2)`; `None` at the other points.
    pub entries_ok: Option<bool>,
}

impl SingularIdentityReport {
    pub fn holds(&self) -> bool {
        self.trace_ok && self.entries_ok != Some(false)
    }
}

/// Checks, in exact integer arithmetic,
/// `n₁₁ = m₁₁² + m₁₁m₁₂`, `n₂₂ = m₂₂² + m₂₂m₂₁`, `n₃₃ = (m₁₁ − m₂₁)(m₂₂ − m₁₂)`
/// at `(−2, −2, −2)` and the trace identity at all four points.
pub fn singular_identities(m: &IntegerMatrix2) -> Result<Vec<SingularIdentityReport>> {
    let w = word_for_matrix(m)?;
    let (a, b, c, d) = (&m.m11, &m.m12, &m.m21, &m.m22);
    let expected_trace: BigInt = a * a + d * d + BigInt::from(2) * b * c + BigInt::one();
    let entries = [a * a + a * b, d * d + d * c, (a - c) * (d - b)];
    let mut out = Vec::new();
    for point in cayley_points() {
        let (_, jac) = exact_jet(&[0, 0, 0], &w, &point);
        let diag: [BigInt; 3] = std::array::from_fn(|i| jac[i][i].clone());
        let trace: BigInt = diag.iter().sum();
        let entries_ok = (point == [-2, -2, -2]).then(|| diag == entries);
        out.push(SingularIdentityReport {
            point,
            diagonal: diag.map(|x| x.to_string()),
            trace: trace.to_string(),
            expected_trace: expected_trace.to_string(),
            trace_ok: trace == expected_trace,
            entries_ok,
        });
    }
    Ok(out)
}

/// How a fixed point of `f_M` lifts to the torus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum LiftKind {
    /// `η_M(t) = t`.
    FixedPair,
    /// `η_M(t) = (1/u, 1/v)`, a two-cycle of `η_M` swapped by the deck involution.
    PeriodTwo,
    /// Neither within tolerance.
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TorusLift {
    pub t: TorusPoint,
    /// `(log|u|, log|v|)`, zero on the real torus.
    pub log_abs: [f64; 2],
    pub kind: LiftKind,
}

/// A point `t` with `Φ(t) = q`, chosen so the third coordinate matches.
pub fn lift_to_torus(q: &Point) -> Result<TorusPoint> {
    let one = C64::new(1.0, 0.0);
    let (u1, u2) = poly::quadratic_roots(one, q[0], one);
    let (v1, v2) = poly::quadratic_roots(one, q[1], one);
    let mut best: Option<(f64, TorusPoint)> = None;
    for u in [u1, u2] {
        for v in [v1, v2] {
            let t = TorusPoint::new(u, v)?;
            let e = (phi(&t)?[2] - q[2]).norm();
            if best.is_none_or(|(b, _)| e < b) {
                best = Some((e, t));
            }
        }
    }
    Ok(best.unwrap().1)
}

fn classify_lift(m: &IntegerMatrix2, q: &Point) -> Result<TorusLift> {
    let t = lift_to_torus(q)?;
    let image = eta(m, &t)?;
    // near the critical values of Φ the lift is only accurate to about the
    // square root of the error in q, and η_M amplifies that by the entries
    // of M, so the two candidates are compared with each other
    let (d_fixed, d_swap) = (image.dist(&t), image.dist(&t.inverse()));
    let (best, other) = (d_fixed.min(d_swap), d_fixed.max(d_swap));
    let kind = if best > 1e-3 || best > 0.1 * other {
        LiftKind::Unresolved
    } else if d_fixed <= d_swap {
        LiftKind::FixedPair
    } else {
        LiftKind::PeriodTwo
    };
    Ok(TorusLift { t, log_abs: [t.u.norm().ln(), t.v.norm().ln()], kind })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocusPoint {
    #[serde(with = "cfmt::point")]
    pub q: Point,
    pub kind: FixedKind,
    /// Moduli of the two surface eigenvalues, larger first.
    pub eigen_moduli: [f64; 2],
    pub saddle: bool,
    /// Torus lift at smooth points.
    pub lift: Option<TorusLift>,
    /// Whether the eigenvalue moduli equal those of `M` (smooth points only).
    pub modulus_match: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocusReport {
    pub word: Word,
    pub matrix: IntegerMatrix2,
    /// `|μ|` for the larger eigenvalue of `M`.
    pub mu_modulus: f64,
    pub points: Vec<LocusPoint>,
    pub seeds_tried: usize,
    pub all_saddles: bool,
}

/// Whether every coordinate is within `tol` of a real number in `[−2, 2]`.
pub fn in_cube(q: &Point, tol: f64) -> bool {
    q.iter().all(|z| z.im.abs() <= tol && z.re.abs() <= 2.0 + tol)
}

/// Fixed points of a hyperbolic word at the Picard parameters: fails with
/// [`Error::OutlierFound`] on the first one outside `[−2, 2]³` (plus 1e-6).
pub fn hyperbolic_locus_check(w: &Word, strategy: &SeedStrategy) -> Result<LocusReport> {
    if classify(w).kind != ElementKind::Hyperbolic {
        return Err(Error::InvalidInput(format!("{w} is not hyperbolic")));
    }
    let p = ParameterQuadruple::picard();
    let m = to_sl2(w)?;
    let mu_modulus = matrix_eigenvalues(&m)[0].norm();
    let search = newton_fixed_points(&p, w, strategy)?;
    let mut points = Vec::new();
    for r in search.records {
        let q = r.point.q;
        if !in_cube(&q, 1e-6) {
            return Err(Error::OutlierFound(q));
        }
        let mut mods = r.eigenvalues.map(|z| z.norm());
        if mods[0] < mods[1] {
            mods.swap(0, 1);
        }
        let saddle = mods[0] >= 1.0 + 1e-6 && (mods[0] * mods[1] - 1.0).abs() < 1e-6;
        let (lift, modulus_match) = if r.kind == FixedKind::SingularSurfacePoint {
            (None, None)
        } else {
            (Some(classify_lift(&m, &q)?), Some((mods[0] - mu_modulus).abs() <= 1e-6 * mu_modulus))
        };
        points.push(LocusPoint { q, kind: r.kind, eigen_moduli: mods, saddle, lift, modulus_match });
    }
    let all_saddles = points.iter().all(|p| p.saddle);
    Ok(LocusReport { word: w.clone(), matrix: m, mu_modulus, points, seeds_tried: search.seeds_tried, all_saddles })
}

/// Direct formula for comparison in tests.
#[doc(hidden)]
pub fn apply_word_direct(w: &Word, q: &Point) -> Point {
    let abc = [C64::new(0.0, 0.0); 3];
    let mut r = *q;
    for l in w.application_order() {
        r = apply_letter_s(&abc, l, &r);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;
    use crate::surface::surface_residual;

    fn tp(u: C64, v: C64) -> TorusPoint {
        TorusPoint::new(u, v).unwrap()
    }

    #[test]
    fn phi_examples() {
        let q = phi(&tp(re(1.0), re(1.0))).unwrap();
        assert_eq!(q, [re(-2.0); 3]);
        assert_eq!(phi(&tp(re(-1.0), re(1.0))).unwrap(), [re(2.0), re(-2.0), re(2.0)]);
        let (th, ph) = (0.7, -1.9);
        let q = phi(&tp(C64::from_polar(1.0, th), C64::from_polar(1.0, ph))).unwrap();
        let e = [-2.0 * th.cos(), -2.0 * ph.cos(), -2.0 * (th - ph).cos()];
        for i in 0..3 {
            assert!((q[i] - e[i]).norm() < 1e-14);
        }
        assert_eq!(TorusPoint::new(re(0.0), re(1.0)), Err(Error::ZeroCoordinate));
    }

    #[test]
    fn phi_lands_on_picard_surface() {
        let p = ParameterQuadruple::picard();
        for t in annulus_samples(500, 1) {
            let q = phi(&t).unwrap();
            assert!(surface_residual(&p, &q).norm() < 1e-12 * (1.0 + norm3(&q).powi(3)));
        }
    }

    #[test]
    fn phi_is_critical_exactly_at_unit_signs() {
        for t in phi_critical_points() {
            let j = phi_jacobian(&t);
            assert!(j.iter().flatten().all(|z| z.norm() < 1e-15), "{t:?}");
            let q = phi(&t).unwrap().map(|z| z.re as i64);
            assert!(cayley_points().contains(&q));
        }
        let j = phi_jacobian(&tp(C64::new(0.3, 0.8), re(1.7)));
        assert!((j[0][0] * j[1][1]).norm() > 1e-3);
    }

    #[test]
    fn eta_examples() {
        let t = tp(C64::new(0.4, 1.1), C64::new(-2.0, 0.3));
        assert_eq!(eta(&IntegerMatrix2::identity(), &t).unwrap(), t);
        let gx = eta(&IntegerMatrix2::gx(), &t).unwrap();
        assert_eq!(gx.u, t.u);
        assert!((gx.v - t.v / (t.u * t.u)).norm() < 1e-14);
        let (m, n) = (IntegerMatrix2::new(1, 2, 2, 5), IntegerMatrix2::new(3, -4, 2, -3));
        let a = eta(&(&m * &n), &t).unwrap();
        let b = eta(&m, &eta(&n, &t).unwrap()).unwrap();
        assert!(a.dist(&b) < 1e-9 * (1.0 + a.u.norm() + a.v.norm()));
    }

    #[test]
    fn semiconjugacy_for_generators() {
        assert_eq!(verify_semiconjugacy(&Word::identity(), 100).unwrap(), 0.0);
        for w in [Word::gx(), Word::gy(), Word::gz()] {
            assert!(verify_semiconjugacy(&w, 1000).unwrap() < 1e-12, "{w}");
            assert!(verify_semiconjugacy(&w.inverse(), 1000).unwrap() < 1e-12, "{w}");
        }
    }

    #[test]
    fn printed_matrix_example() {
        let m = IntegerMatrix2::new(1, 2, 2, 5);
        let ev = sing_pt_eigenvalues(&m, &[-2, -2, -2]).unwrap();
        let s = 12.0 * 2f64.sqrt();
        let want = [17.0 - s, 1.0, 17.0 + s];
        for i in 0..3 {
            assert!((ev[i] - want[i]).norm() <= 1e-8 * want[i], "{ev:?}");
        }
        let r = singular_identities(&m).unwrap();
        assert_eq!(r[0].diagonal[0], "3");
        assert_eq!(r[0].diagonal[2], "-3");
        assert_eq!(r[0].trace, "35");
        assert!(r.iter().all(|x| x.holds()), "{r:?}");
    }

    #[test]
    fn lift_recovers_torus_point() {
        let t = tp(C64::from_polar(1.0, 0.8), C64::from_polar(1.0, 2.1));
        let l = lift_to_torus(&phi(&t).unwrap()).unwrap();
        assert!(l.dist(&t) < 1e-10 || l.dist(&t.inverse()) < 1e-10);
    }

    #[test]
    fn commutator_fixed_points_are_confined() {
        let w = crate::infinity::build_gamma_ij(crate::infinity::GammaStyle::MarkoffCommutators)
            .get(crate::word::InfinityVertex::V1, crate::word::InfinityVertex::V2)
            .clone();
        let r = hyperbolic_locus_check(&w, &SeedStrategy::picard()).unwrap();
        assert!(!r.points.is_empty());
        assert!(r.all_saddles);
        for pt in &r.points {
            if let Some(l) = &pt.lift {
                assert!(l.log_abs[0].abs() < 1e-6 && l.log_abs[1].abs() < 1e-6);
                assert_ne!(l.kind, LiftKind::Unresolved, "{pt:?} {}", r.matrix);
                assert_eq!(pt.modulus_match, Some(true));
            }
        }
    }
}
