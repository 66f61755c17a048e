//! Fixed points of word maps on the surface and their classification.

use crate::action::{restricted_derivative, tangent_eigenvalues, word_jet, RestrictedDerivative};
use crate::linalg::{self, Mat3, Vec3};
use crate::params::ParameterQuadruple;
use crate::surface::{self, gradient, surface_residual, SurfacePoint};
use crate::word::{classify, cyclic_reduce, enumerate_words, ElementKind, Letter, Parity, Word};
use crate::{cfmt, dist3, norm3, re, Point, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

/// Type of a fixed point, read off the restricted derivative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FixedKind {
    /// Trace farther than 1e-6 from `[−2, 2]`.
    Saddle,
    /// Trace in the band around `(−2, 2)`.
    EllipticLike,
    /// Trace `±2` with trivial nilpotent part.
    ParabolicLike,
    /// Trace 2, determinant 1 and a non-zero nilpotent part.
    Shear,
    /// Fixed point at a singular point of the surface.
    SingularSurfacePoint,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointRecord {
    pub point: SurfacePoint,
    pub word: Word,
    pub restricted: Option<RestrictedDerivative>,
    #[serde(with = "cfmt::complex_vec_2")]
    pub eigenvalues: [C64; 2],
    pub kind: FixedKind,
    /// Trace within the tolerance band but not clearly inside the interval.
    pub borderline: bool,
    /// `‖w(q) − q‖`.
    pub displacement: f64,
}

impl FixedPointRecord {
    pub fn trace(&self) -> Option<C64> {
        self.restricted.map(|r| r.trace())
    }
}

/// Distance in ℂ from `t` to the real segment `[−2, 2]`.
pub fn dist_to_interval(t: C64) -> f64 {
    let dx = (t.re.abs() - 2.0).max(0.0);
    dx.hypot(t.im)
}

/// Classifies a restricted derivative.
pub fn classify_restricted(r: &RestrictedDerivative) -> (FixedKind, bool) {
    let t = r.trace();
    let d = dist_to_interval(t);
    if d > 1e-6 {
        return (FixedKind::Saddle, false);
    }
    let borderline = t.im.abs() > 1e-12 || (t.re.abs() - 2.0).abs() < 1e-6;
    let nilpotent = linalg::frobenius2(&linalg::sub2(&r.matrix2, &linalg::identity2()));
    let kind = if (t - 2.0).norm() < 1e-8 && (r.det() - 1.0).norm() < 1e-8 && nilpotent > 1e-6 {
        FixedKind::Shear
    } else if (t.re.abs() - 2.0).abs() < 1e-6 {
        FixedKind::ParabolicLike
    } else {
        FixedKind::EllipticLike
    };
    (kind, borderline && kind != FixedKind::Shear)
}

/// Builds the record for a point already known to be fixed.
pub fn classify_fixed_point(p: &ParameterQuadruple, w: &Word, q: Point) -> Result<FixedPointRecord> {
    let point = SurfacePoint::new(p, q);
    let jet = word_jet(p, w, &q)?;
    let displacement = dist3(&jet.value, &q);
    let g = norm3(&gradient(p, &q));
    let (restricted, kind, borderline) = if g < 1e-7 * (1.0 + norm3(&q).powi(2)) {
        (None, FixedKind::SingularSurfacePoint, false)
    } else {
        let r = restricted_derivative(p, w, &point)?;
        let (k, b) = classify_restricted(&r);
        (Some(r), k, b)
    };
    let eigenvalues = match restricted {
        Some(r) => r.eigenvalues(),
        None => tangent_eigenvalues(p, w, &point)?,
    };
    Ok(FixedPointRecord { point, word: w.clone(), restricted, eigenvalues, kind, borderline, displacement })
}

/// Multi-start configuration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeedStrategy {
    /// Points per axis of a real grid over `[−extent, extent]³`.
    pub real_grid: usize,
    pub real_extent: f64,
    /// Points per angle of a grid on the real torus, pushed forward by
    /// `(θ, φ) ↦ (−2cos θ, −2cos φ, −2cos(θ−φ))`.
    pub torus_grid: usize,
    /// Random complex seeds in the ball of the given radius.
    pub random: usize,
    pub random_radius: f64,
    pub seed: u64,
}

impl Default for SeedStrategy {
    fn default() -> Self {
        SeedStrategy { real_grid: 20, real_extent: 6.0, torus_grid: 0, random: 200, random_radius: 10.0, seed: 0 }
    }
}

impl SeedStrategy {
    /// Torus push-forwards plus random complex seeds, for Picard-like parameters.
    pub fn picard() -> Self {
        SeedStrategy { real_grid: 0, real_extent: 6.0, torus_grid: 24, random: 400, random_radius: 10.0, seed: 0 }
    }

    /// A cheaper mix for screening many words.
    pub fn light() -> Self {
        SeedStrategy { real_grid: 8, real_extent: 4.0, torus_grid: 8, random: 64, random_radius: 6.0, seed: 0 }
    }

    pub fn seeds(&self) -> Vec<Point> {
        let mut out = Vec::new();
        let n = self.real_grid;
        let coord = |i: usize| if n <= 1 { 0.0 } else { -self.real_extent + 2.0 * self.real_extent * i as f64 / (n - 1) as f64 };
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    out.push([re(coord(i)), re(coord(j)), re(coord(k))]);
                }
            }
        }
        let m = self.torus_grid;
        for i in 0..m {
            for j in 0..m {
                // offset by half a step to avoid the critical points of the torus map
                let th = std::f64::consts::TAU * (i as f64 + 0.5) / m as f64;
                let ph = std::f64::consts::TAU * (j as f64 + 0.25) / m as f64;
                out.push([re(-2.0 * th.cos()), re(-2.0 * ph.cos()), re(-2.0 * (th - ph).cos())]);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        let r = self.random_radius;
        while out.len() < n * n * n + m * m + self.random {
            let q: Point = std::array::from_fn(|_| C64::new(rng.gen_range(-r..r), rng.gen_range(-r..r)));
            if norm3(&q) <= r {
                out.push(q);
            }
        }
        out
    }
}

/// Fixed points found from a multi-start run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FixedPointSearch {
    pub records: Vec<FixedPointRecord>,
    pub seeds_tried: usize,
    pub seeds_converged: usize,
}

fn residual(p: &ParameterQuadruple, w: &Word, q: &Point) -> Option<([C64; 4], Mat3)> {
    let jet = word_jet(p, w, q).ok()?;
    let f = surface_residual(p, q);
    let r = [jet.value[0] - q[0], jet.value[1] - q[1], jet.value[2] - q[2], f];
    r.iter().all(|z| z.re.is_finite() && z.im.is_finite()).then_some((r, jet.jacobian))
}

fn sq(r: &[C64; 4]) -> f64 {
    r.iter().map(|z| z.norm_sqr()).sum()
}

/// Levenberg–Marquardt on `(w(q) − q, F(q) − D) = 0`.
pub fn polish_fixed_point(p: &ParameterQuadruple, w: &Word, seed: &Point) -> Option<Point> {
    let mut q = *seed;
    let (mut r, mut jac) = residual(p, w, &q)?;
    let mut mu = 1e-3;
    for _ in 0..80 {
        let scale = 1.0 + norm3(&q);
        let disp = (r[0].norm_sqr() + r[1].norm_sqr() + r[2].norm_sqr()).sqrt();
        if disp < 1e-13 * scale && r[3].norm() < 1e-13 * scale.powi(3) {
            break;
        }
        let g = gradient(p, &q);
        // rows of the 4×3 Jacobian
        let mut rows: [Vec3; 4] = [jac[0], jac[1], jac[2], g];
        for (i, row) in rows.iter_mut().enumerate().take(3) {
            row[i] -= 1.0;
        }
        let mut n: Mat3 = [[C64::new(0.0, 0.0); 3]; 3];
        let mut rhs: Vec3 = [C64::new(0.0, 0.0); 3];
        for (row, ri) in rows.iter().zip(&r) {
            for a in 0..3 {
                rhs[a] -= row[a].conj() * ri;
                for b in 0..3 {
                    n[a][b] += row[a].conj() * row[b];
                }
            }
        }
        let diag = (0..3).map(|a| n[a][a].re).fold(0.0, f64::max).max(1e-300);
        let mut accepted = false;
        for _ in 0..12 {
            let mut damped = n;
            for (a, row) in damped.iter_mut().enumerate() {
                row[a] += mu * diag;
            }
            let Some(step) = linalg::solve3(&damped, &rhs) else {
                mu *= 10.0;
                continue;
            };
            let trial = [q[0] + step[0], q[1] + step[1], q[2] + step[2]];
            if let Some((rt, jt)) = residual(p, w, &trial) {
                if sq(&rt) < sq(&r) {
                    q = trial;
                    r = rt;
                    jac = jt;
                    mu = (mu / 5.0).max(1e-15);
                    accepted = true;
                    break;
                }
            }
            mu *= 8.0;
        }
        if !accepted || norm3(&q) > 1e8 {
            break;
        }
    }
    let scale = 1.0 + norm3(&q);
    let disp = (r[0].norm_sqr() + r[1].norm_sqr() + r[2].norm_sqr()).sqrt();
    (disp < 1e-10 * scale && r[3].norm() < 1e-10 * scale.powi(3)).then_some(q)
}

/// Multi-start search for the fixed points of `w` on the surface,
/// deduplicated at distance 1e-6 and classified.
pub fn newton_fixed_points(p: &ParameterQuadruple, w: &Word, strategy: &SeedStrategy) -> Result<FixedPointSearch> {
    if w.is_empty() {
        return Err(crate::Error::InvalidInput("the identity fixes every point".into()));
    }
    let seeds = strategy.seeds();
    let found: Vec<Option<Point>> = seeds.par_iter().map(|s| polish_fixed_point(p, w, s)).collect();
    let seeds_converged = found.iter().flatten().count();
    // Near a singular fixed point both residuals vanish to second order
    // along one direction, so the solver can stall short of it with
    // residuals inside tolerance. Such points are snapped.
    let singular: Vec<Point> = common_fixed_points(p)
        .into_iter()
        .map(|s| s.q)
        .filter(|s| matches!(crate::action::apply_word(p, w, s), Ok(v) if dist3(&v, s) < 1e-10 * (1.0 + norm3(s))))
        .collect();
    let mut unique: Vec<Point> = Vec::new();
    for mut q in found.into_iter().flatten() {
        if let Some(s) = singular.iter().find(|s| dist3(s, &q) < 1e-3 && norm3(&gradient(p, &q)) < 1e-2) {
            q = *s;
        }
        if !unique.iter().any(|u| dist3(u, &q) < 1e-6) {
            unique.push(q);
        }
    }
    let records = unique.into_iter().map(|q| classify_fixed_point(p, w, q)).collect::<Result<Vec<_>>>()?;
    Ok(FixedPointSearch { records, seeds_tried: seeds.len(), seeds_converged })
}

/// Points of the surface fixed by all three involutions: the zeros of the
/// gradient lying on the surface.
pub fn common_fixed_points(p: &ParameterQuadruple) -> Vec<SurfacePoint> {
    surface::critical_points(p)
        .into_iter()
        .map(|q| SurfacePoint::new(p, q))
        .filter(|s| s.on_surface(1e-9))
        .collect()
}

/// Result of sampling a fiber for shear fixed points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShearCensus {
    pub axis: Letter,
    #[serde(with = "cfmt::complex")]
    pub constant: C64,
    /// The word tested, `g² ` on the fiber at 0 and `g⁴` otherwise.
    pub word: Word,
    pub sampled: usize,
    pub shear: usize,
    /// Sampled points within 1e-6 of the exceptional lines.
    #[serde(serialize_with = "serialize_points")]
    pub exceptional: Vec<Point>,
    /// Non-exceptional points that failed to be shear fixed points.
    #[serde(serialize_with = "serialize_points")]
    pub failures: Vec<Point>,
}

fn serialize_points<S: serde::Serializer>(v: &[Point], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for q in v {
        seq.serialize_element(&cfmt::format_point(q))?;
    }
    seq.end()
}

/// Samples `n` points on the fiber `q_axis = constant` and checks that each
/// is a shear fixed point of `g_axis²` (constant 0) or `g_axis⁴` (otherwise),
/// except near `q_j = A_j/2` or `q_k = A_k/2`.
pub fn shear_census(p: &ParameterQuadruple, axis: Letter, constant: C64, n: usize, seed: u64) -> ShearCensus {
    let power = if constant.norm() < 1e-12 { 2 } else { 4 };
    let word = Word::g(axis).pow(power);
    let (j, k) = axis.others();
    let abc = p.abc();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let points: Vec<Point> = (0..n)
        .map(|_| {
            let t = C64::new(rng.gen_range(-3.0..3.0), rng.gen_range(-3.0..3.0));
            let pick = rng.gen_bool(0.5);
            lift_on_fiber(p, axis, constant, t, pick)
        })
        .collect();
    let verdicts: Vec<(bool, bool)> = points
        .par_iter()
        .map(|q| {
            let exceptional = (q[j] - abc[j] / 2.0).norm() < 1e-6 || (q[k] - abc[k] / 2.0).norm() < 1e-6;
            let shear = matches!(classify_fixed_point(p, &word, *q), Ok(r) if r.kind == FixedKind::Shear && r.displacement < 1e-8 * (1.0 + norm3(q)));
            (exceptional, shear)
        })
        .collect();
    let mut census = ShearCensus { axis, constant, word, sampled: n, shear: 0, exceptional: vec![], failures: vec![] };
    for (q, (exc, shear)) in points.iter().zip(verdicts) {
        if shear {
            census.shear += 1;
        }
        if exc {
            census.exceptional.push(*q);
        } else if !shear {
            census.failures.push(*q);
        }
    }
    census
}

/// The point of the fiber `q_axis = c` with `q_j = t`, choosing one of the
/// two roots for `q_k`.
pub fn lift_on_fiber(p: &ParameterQuadruple, axis: Letter, c: C64, t: C64, second: bool) -> Point {
    let (j, k) = axis.others();
    let abc = p.abc();
    let b = c * t - abc[k];
    let cc = c * c + t * t - abc[axis.index()] * c - abc[j] * t - p.d;
    let (r1, r2) = crate::poly::quadratic_roots(C64::new(1.0, 0.0), b, cc);
    let mut q = [C64::new(0.0, 0.0); 3];
    q[axis.index()] = c;
    q[j] = t;
    q[k] = if second { r2 } else { r1 };
    q
}

/// Canonical representative of the conjugacy class of a cyclically reduced
/// word up to rotation and inversion.
fn canonical(w: &Word) -> Vec<usize> {
    let mut best: Option<Vec<usize>> = None;
    for v in [w.clone(), w.inverse()] {
        for k in 0..v.len() {
            let r: Vec<usize> = v.rotate(k).letters().iter().map(|l| l.index()).collect();
            if r.len() == v.len() && best.as_ref().is_none_or(|b| r < *b) {
                best = Some(r);
            }
        }
    }
    best.unwrap_or_default()
}

/// Cyclically reduced hyperbolic Γ-words up to `max_len`, one per class
/// under rotation and inversion.
pub fn hyperbolic_classes(max_len: usize) -> Vec<Word> {
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for w in enumerate_words(max_len, Parity::Gamma) {
        let (core, conj) = cyclic_reduce(&w);
        if !conj.is_empty() || core.len() != w.len() || classify(&w).kind != ElementKind::Hyperbolic {
            continue;
        }
        if seen.insert(canonical(&w)) {
            out.push(w);
        }
    }
    out
}

/// Fixed points of hyperbolic words whose restricted trace lies within
/// 1e-4 of `[−2, 2]`. Parabolic words and singular points are skipped.
pub fn property_p_screen(p: &ParameterQuadruple, max_len: usize, strategy: &SeedStrategy) -> Result<Vec<FixedPointRecord>> {
    let mut flagged = Vec::new();
    for w in hyperbolic_classes(max_len) {
        for r in newton_fixed_points(p, &w, strategy)?.records {
            if let Some(t) = r.trace() {
                if dist_to_interval(t) <= 1e-4 {
                    flagged.push(r);
                }
            }
        }
    }
    Ok(flagged)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: f64, y: f64, z: f64) -> Point {
        [re(x), re(y), re(z)]
    }

    #[test]
    fn interval_distance() {
        assert_eq!(dist_to_interval(re(1.0)), 0.0);
        assert_eq!(dist_to_interval(re(-3.0)), 1.0);
        assert!((dist_to_interval(C64::new(2.0, 1e-3)) - 1e-3).abs() < 1e-15);
    }

    #[test]
    fn dm_singular_point_is_found() {
        for a in [-1.0, 0.5] {
            let (p, _) = ParameterQuadruple::dm(a);
            let s = newton_fixed_points(&p, &Word::gx(), &SeedStrategy::default()).unwrap();
            let r = s.records.iter().find(|r| dist3(&r.point.q, &pt(a, 2.0, 2.0)) < 1e-6).expect("p1 missing");
            assert_eq!(r.kind, FixedKind::SingularSurfacePoint);
        }
    }

    #[test]
    fn markoff_origin_is_singular_fixed_point() {
        let p = ParameterQuadruple::markoff();
        let s = newton_fixed_points(&p, &Word::gx(), &SeedStrategy::light()).unwrap();
        let r = s.records.iter().find(|r| norm3(&r.point.q) < 1e-6).unwrap();
        assert_eq!(r.kind, FixedKind::SingularSurfacePoint);
    }

    #[test]
    fn returned_points_meet_tolerances() {
        let p = ParameterQuadruple::real(0.3, -0.2, 0.1, 0.4);
        let w: Word = "xyz".parse::<Word>().unwrap().compose(&"xzy".parse().unwrap());
        let s = newton_fixed_points(&p, &w, &SeedStrategy::light()).unwrap();
        assert!(!s.records.is_empty());
        for r in &s.records {
            let n = norm3(&r.point.q);
            assert!(r.displacement < 1e-10 * (1.0 + n));
            assert!(r.point.residual < 1e-10 * (1.0 + n.powi(3)));
            if let Some(rd) = r.restricted {
                assert!((rd.det() - 1.0).norm() < 1e-8);
            }
        }
    }

    #[test]
    fn common_fixed_point_examples() {
        let (p, _) = ParameterQuadruple::dm(0.7);
        let c = common_fixed_points(&p);
        assert_eq!(c.len(), 3);
        for e in [pt(0.7, 2.0, 2.0), pt(2.0, 0.7, 2.0), pt(2.0, 2.0, 0.7)] {
            assert!(c.iter().any(|s| dist3(&s.q, &e) < 1e-8));
        }
        assert_eq!(common_fixed_points(&ParameterQuadruple::picard()).len(), 4);
        let m = common_fixed_points(&ParameterQuadruple::markoff());
        assert_eq!(m.len(), 1);
        assert!(norm3(&m[0].q) < 1e-12);
    }

    #[test]
    fn shear_point_on_markoff_fiber() {
        let p = ParameterQuadruple::markoff();
        let q = [re(0.0), re(1.0), C64::new(0.0, 1.0)];
        let r = classify_fixed_point(&p, &Word::gx().pow(2), q).unwrap();
        assert_eq!(r.kind, FixedKind::Shear);
        let c = shear_census(&p, Letter::X, re(0.0), 200, 3);
        assert!(c.failures.is_empty(), "{:?}", c.failures);
        assert_eq!(c.word, Word::gx().pow(2));
        let c = shear_census(&p, Letter::X, re(2f64.sqrt()), 100, 4);
        assert_eq!(c.word, Word::gx().pow(4));
        assert!(c.failures.is_empty());
    }

    #[test]
    fn classes_are_cyclic_representatives() {
        let c = hyperbolic_classes(6);
        assert!(c.iter().all(|w| classify(w).kind == ElementKind::Hyperbolic));
        assert!(c.iter().any(|w| w.len() == 6));
        for (i, a) in c.iter().enumerate() {
            for b in &c[i + 1..] {
                assert_ne!(canonical(a), canonical(b));
            }
        }
    }
}
