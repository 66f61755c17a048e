//! Iterated commutators of maps tangent to the identity.
//!
//! If `f₁, f₂` move every point of a ball by less than `K`, their commutator
//! moves points of a slightly smaller ball by `O(K²)`. Starting from a
//! non-commuting pair `S(0)` and taking `S(n+1) = {[γ, γ'] : γ ≠ γ' ∈ S(n)}`
//! gives elements converging to the identity, which is the local obstruction
//! to discreteness. This module measures the displacements level by level
//! against the budget `K/2ⁿ`.

use crate::action::{abc_as, apply_word_s, word_jet};
use crate::linalg::{self, Mat3};
use crate::params::ParameterQuadruple;
use crate::sampling::{ball_samples, Domain};
use crate::scalar::{DdComplex, Precision, Scalar};
use crate::word::{commutes, Word};
use crate::{cfmt, re, Error, Point, Result, C64};
use rayon::prelude::*;
use serde::Serialize;

/// Ball radius `ε` and displacement budget `K = ε/32`.
///
/// The working radii `ε_n = ε − 8K − K Σ_{j=1}^{n−1} 2^{3−j}` decrease to
/// `ε − 16K`, and `ε − 16K ≥ ε/2` exactly when `K ≤ ε/32`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CascadeBudget {
    pub epsilon: f64,
    #[serde(rename = "K")]
    pub k: f64,
}

impl CascadeBudget {
    /// `ε_n`.
    pub fn working_radius(&self, n: u32) -> f64 {
        let tail: f64 = (1..n).map(|j| 2f64.powi(3 - j as i32)).sum();
        self.epsilon - 8.0 * self.k - self.k * tail
    }

    /// `K / 2ⁿ`.
    pub fn level_bound(&self, n: u32) -> f64 {
        self.k / 2f64.powi(n as i32)
    }
}

pub fn budget_for(epsilon: f64) -> CascadeBudget {
    CascadeBudget { epsilon, k: epsilon / 32.0 }
}

/// One level `S(n)` with measured sup-displacements.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommutatorLevel {
    pub n: u32,
    pub elements: Vec<Word>,
    /// Sampled `sup ‖γ(q) − q‖`, one per element (empty until measured).
    pub measured_sup: Vec<f64>,
}

impl CommutatorLevel {
    pub fn unmeasured(n: u32, elements: Vec<Word>) -> Self {
        CommutatorLevel { n, elements, measured_sup: Vec::new() }
    }
}

/// Sample points and the evaluation precision for sup estimates.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SampleSpec {
    pub samples: usize,
    pub domain: Domain,
    pub precision: Precision,
    pub seed: u32,
}

impl SampleSpec {
    pub fn new(samples: usize, domain: Domain) -> Self {
        SampleSpec { samples, domain, precision: Precision::Auto, seed: 0 }
    }
}

fn displacement<S: Scalar>(abc: &[S; 3], w: &Word, q: &Point) -> f64 {
    let start = q.map(S::from_c64);
    let img = apply_word_s(abc, w, &start);
    let mut s = 0.0;
    for i in 0..3 {
        let d = (img[i] - start[i]).to_c64();
        if !(d.re.is_finite() && d.im.is_finite()) {
            return f64::INFINITY;
        }
        s += d.norm_sqr();
    }
    s.sqrt()
}

/// `max_q ‖w(q) − q‖` over the given points.
pub fn sup_displacement(p: &ParameterQuadruple, w: &Word, points: &[Point], precision: Precision) -> f64 {
    let dd = |pts: &[Point]| {
        let abc: [DdComplex; 3] = abc_as(p);
        pts.par_iter().map(|q| displacement(&abc, w, q)).reduce(|| 0.0, f64::max)
    };
    match precision {
        Precision::DoubleDouble => dd(points),
        Precision::Double | Precision::Auto => {
            let abc: [C64; 3] = abc_as(p);
            let d = points.par_iter().map(|q| displacement(&abc, w, q)).reduce(|| 0.0, f64::max);
            if precision == Precision::Auto && d < 1e-13 {
                dd(points)
            } else {
                d
            }
        }
    }
}

/// Result of testing `sup‖[f₁,f₂] − id‖ ≤ (2/τ) sup‖f₁ − id‖ sup‖f₂ − id‖`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundCheck {
    pub holds: bool,
    /// Sup for the commutator on the shrunken ball.
    pub lhs: f64,
    pub rhs: f64,
    pub shrunken_radius: f64,
}

/// `2 d₁ d₂ / τ`.
pub fn commutator_bound(d1: f64, d2: f64, tau: f64) -> f64 {
    2.0 * d1 * d2 / tau
}

/// Measures both sides of the commutator estimate. The displacements of
/// `f₁, f₂` are sampled on `B_ε(center)`, the commutator on
/// `B_{ε − 4d − τ}` with `d` the larger of the two.
pub fn commutator_bound_check(
    f1: &Word,
    f2: &Word,
    p: &ParameterQuadruple,
    center: &Point,
    epsilon: f64,
    tau: f64,
    spec: &SampleSpec,
) -> Result<BoundCheck> {
    let outer = ball_samples(p, center, epsilon, spec.samples, spec.domain, spec.seed);
    let d1 = sup_displacement(p, f1, &outer, spec.precision);
    let d2 = sup_displacement(p, f2, &outer, spec.precision);
    let d = d1.max(d2);
    if !(4.0 * d + tau < epsilon) {
        return Err(Error::HypothesisViolated { max_deviation: d, epsilon: epsilon - tau });
    }
    let shrunken_radius = epsilon - 4.0 * d - tau;
    let inner = ball_samples(p, center, shrunken_radius, spec.samples, spec.domain, spec.seed.wrapping_add(1));
    let lhs = sup_displacement(p, &Word::commutator(f1, f2), &inner, spec.precision);
    let rhs = commutator_bound(d1, d2, tau);
    Ok(BoundCheck { holds: lhs <= rhs, lhs, rhs, shrunken_radius })
}

/// `S(0) = {h_x, h_y, h_x⁻¹, h_y⁻¹}` with `h_x = g_x²`, `h_y = g_y²`, both
/// tangent to the identity at the origin of the Markoff surface.
pub fn seed_markoff(_p: &ParameterQuadruple) -> CommutatorLevel {
    let hx = Word::gx().pow(2);
    let hy = Word::gy().pow(2);
    CommutatorLevel::unmeasured(0, vec![hx.clone(), hy.clone(), hx.inverse(), hy.inverse()])
}

/// Seed for the Dubrovin–Mazzocco family.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DmSeed {
    pub k: u64,
    pub level: CommutatorLevel,
    /// `λ₁ = a²/2 − 1 + √(a⁴ − 4a²)/2`.
    #[serde(with = "cfmt::complex")]
    pub lambda: C64,
    /// `|λ₁^k − 1|`.
    pub eigen_return: f64,
    /// `‖(D_{p₁}g_x)^k − Id‖`.
    pub matrix_return: f64,
    /// `matrix_return / eigen_return`, the conditioning of the eigenbasis.
    pub conditioning: f64,
}

/// The fixed point `p₁ = (a, 2, 2)` of `g_x`.
pub fn dm_p1(a: f64) -> Point {
    [re(a), re(2.0), re(2.0)]
}

/// Smallest `k ≤ cap` with `‖(D_{p₁}g_x)^k − Id‖ < τ` (operator norm), and
/// `S(0) = {f, h, f⁻¹, h⁻¹}` with `f = g_x^k`, `h = g_y⁻¹ g_x^k g_y`.
pub fn seed_dm(a: f64, tau: f64) -> Result<DmSeed> {
    seed_dm_with_cap(a, tau, 1_000_000)
}

pub fn seed_dm_with_cap(a: f64, tau: f64, cap: u64) -> Result<DmSeed> {
    let (p, _) = ParameterQuadruple::dm(a);
    let jac = word_jet(&p, &Word::gx(), &dm_p1(a))?.jacobian;
    let id = linalg::identity3();
    let mut power: Mat3 = id;
    for k in 1..=cap {
        power = linalg::mul3(&power, &jac);
        let diff = linalg::sub3(&power, &id);
        let frob = linalg::frobenius3(&diff);
        // ‖M‖₂ ≥ ‖M‖_F / √3 for 3×3 matrices
        if frob > 3f64.sqrt() * tau {
            continue;
        }
        let op = linalg::operator_norm3(&diff).min(frob);
        if op < tau {
            let lambda = re(a * a / 2.0 - 1.0) + C64::new(a.powi(4) - 4.0 * a * a, 0.0).sqrt() / 2.0;
            let eigen_return = (lambda.powu(k as u32) - 1.0).norm();
            let f = Word::gx().pow(k as i64);
            let h = f.conjugate_by(&Word::gy().inverse());
            let level = CommutatorLevel::unmeasured(0, vec![f.clone(), h.clone(), f.inverse(), h.inverse()]);
            let conditioning = if eigen_return > 0.0 { op / eigen_return } else { 1.0 };
            return Ok(DmSeed { k, level, lambda, eigen_return, matrix_return: op, conditioning });
        }
    }
    Err(Error::NoReturnFound { cap })
}

/// How much of `S(n)` to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Expansion {
    /// `([γ₁, γ₂], [γ₁⁻¹, γ₂⁻¹])` built from the first two elements.
    Canonical,
    /// Every non-trivial commutator of distinct elements (levels up to 3).
    Full,
}

/// The next level.
pub fn next_level(level: &CommutatorLevel, expansion: Expansion) -> Result<CommutatorLevel> {
    let e = &level.elements;
    if e.len() < 2 {
        return Err(Error::InvalidInput("a level needs two elements".into()));
    }
    let elements = match expansion {
        Expansion::Canonical => {
            let (a, b) = (&e[0], &e[1]);
            assert!(!commutes(a, b), "canonical elements of level {} commute", level.n);
            vec![Word::commutator(a, b), Word::commutator(&a.inverse(), &b.inverse())]
        }
        Expansion::Full => {
            if level.n >= 3 {
                return Err(Error::InvalidInput("full expansion is limited to levels 0..=3".into()));
            }
            let mut out = Vec::new();
            for (i, a) in e.iter().enumerate() {
                for (j, b) in e.iter().enumerate() {
                    if i != j {
                        let c = Word::commutator(a, b);
                        if !c.is_empty() && !out.contains(&c) {
                            out.push(c);
                        }
                    }
                }
            }
            out
        }
    };
    for w in &elements {
        assert!(!w.is_empty(), "commutator collapsed to the identity");
    }
    Ok(CommutatorLevel::unmeasured(level.n + 1, elements))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CascadeReport {
    pub budget: CascadeBudget,
    #[serde(with = "cfmt::point")]
    pub base_point: Point,
    pub levels: Vec<CommutatorLevel>,
    pub decay_ok: bool,
    pub samples_per_level: usize,
    pub domain: Domain,
}

impl CascadeReport {
    /// Largest measured displacement at each level.
    pub fn level_sups(&self) -> Vec<f64> {
        self.levels.iter().map(|l| l.measured_sup.iter().copied().fold(0.0, f64::max)).collect()
    }
}

/// Runtime options for [`run_cascade`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CascadeOptions {
    pub sample: SampleSpec,
    pub expansion: Expansion,
}

/// Builds `S(0..=n_max)` and measures every element on the `ε/2`-ball.
///
/// Fails with [`Error::SeedTooLoose`] unless every seed moves points of the
/// full `ε`-ball by less than `K`.
pub fn run_cascade(
    level0: &CommutatorLevel,
    p: &ParameterQuadruple,
    budget: &CascadeBudget,
    center: &Point,
    n_max: u32,
    opts: &CascadeOptions,
) -> Result<CascadeReport> {
    let s = &opts.sample;
    let outer = ball_samples(p, center, budget.epsilon, s.samples, s.domain, s.seed);
    for w in &level0.elements {
        let d = sup_displacement(p, w, &outer, s.precision);
        if !(d < budget.k) {
            return Err(Error::SeedTooLoose { word: w.to_string(), deviation: d, budget: budget.k });
        }
    }
    let inner = ball_samples(p, center, budget.epsilon / 2.0, s.samples, s.domain, s.seed.wrapping_add(1));
    let mut levels = Vec::new();
    let mut current = CommutatorLevel::unmeasured(0, level0.elements.clone());
    loop {
        current.measured_sup = current.elements.iter().map(|w| sup_displacement(p, w, &inner, s.precision)).collect();
        let n = current.n;
        let next = if n < n_max { Some(next_level(&current, opts.expansion)?) } else { None };
        levels.push(current);
        match next {
            Some(l) => current = l,
            None => break,
        }
    }
    let decay_ok = levels.iter().all(|l| l.measured_sup.iter().all(|&d| d <= budget.level_bound(l.n)));
    Ok(CascadeReport {
        budget: *budget,
        base_point: *center,
        levels,
        decay_ok,
        samples_per_level: inner.len(),
        domain: s.domain,
    })
}

/// Halves `ε` (starting from `epsilon0`) until every seed moves points of
/// `B_ε(center)` by less than `ε/32`; at most `max_halvings` times.
pub fn fit_epsilon(
    level0: &CommutatorLevel,
    p: &ParameterQuadruple,
    center: &Point,
    epsilon0: f64,
    spec: &SampleSpec,
    max_halvings: u32,
) -> Result<f64> {
    let mut eps = epsilon0;
    for _ in 0..=max_halvings {
        let pts = ball_samples(p, center, eps, spec.samples, spec.domain, spec.seed);
        let worst = level0.elements.iter().map(|w| sup_displacement(p, w, &pts, spec.precision)).fold(0.0, f64::max);
        if worst < eps / 32.0 {
            return Ok(eps);
        }
        eps /= 2.0;
    }
    Err(Error::SeedTooLoose { word: "S(0)".into(), deviation: f64::NAN, budget: eps / 32.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(n: usize) -> SampleSpec {
        SampleSpec::new(n, Domain::Surface)
    }

    #[test]
    fn budget_examples() {
        assert_eq!(budget_for(1.0).k, 1.0 / 32.0);
        assert!((budget_for(0.32).k - 0.01).abs() < 1e-17);
        assert!(budget_for(1e-9).k < 1e-10);
        let b = budget_for(1.0);
        for n in 0..40 {
            assert!(b.working_radius(n) >= 0.5 - 1e-15);
        }
    }

    #[test]
    fn markoff_seeds_are_tangent_to_identity() {
        let mk = ParameterQuadruple::markoff();
        let s0 = seed_markoff(&mk);
        let jet = word_jet(&mk, &s0.elements[0], &[re(0.0); 3]).unwrap();
        assert_eq!(jet.jacobian, linalg::identity3());
        assert_eq!(jet.value, [re(0.0); 3]);
        assert!(!commutes(&s0.elements[0], &s0.elements[1]));
    }

    #[test]
    fn dm_seed_examples() {
        let s = seed_dm(0.0, 1e-3).unwrap();
        assert_eq!(s.k, 2);
        assert!(s.matrix_return < 1e-12, "{s:?}");
        let s = seed_dm(1.0, 1e-3).unwrap();
        assert_eq!(s.k, 3);
        for a in [-1.3, 0.4, 1.7] {
            let s = seed_dm(a, 0.05).unwrap();
            assert!((s.lambda.norm() - 1.0).abs() < 1e-12);
            assert!(s.eigen_return < 2.0 * 0.05);
        }
        assert!(matches!(seed_dm_with_cap(0.4, 1e-9, 10), Err(Error::NoReturnFound { cap: 10 })));
    }

    #[test]
    fn commutator_of_equal_maps_is_trivial() {
        let mk = ParameterQuadruple::markoff();
        let hx = Word::gx().pow(2);
        let r = commutator_bound_check(&hx, &hx, &mk, &[re(0.0); 3], 0.01, 1e-4, &spec(200)).unwrap();
        assert_eq!(r.lhs, 0.0);
        assert!(r.holds);
        assert!((commutator_bound(1e-3, 2e-3, 0.01) - 4e-4).abs() < 1e-18);
    }

    #[test]
    fn commutator_estimate_for_markoff_seeds() {
        let mk = ParameterQuadruple::markoff();
        let eps = 0.02;
        let k = budget_for(eps).k;
        let r = commutator_bound_check(&Word::gx().pow(2), &Word::gy().pow(2), &mk, &[re(0.0); 3], eps, k, &spec(2000))
            .unwrap();
        assert!(r.holds, "{r:?}");
        // the large ball breaks the hypothesis
        let big = commutator_bound_check(&Word::gx().pow(2), &Word::gy().pow(2), &mk, &[re(0.0); 3], 0.3, 0.3 / 32.0, &spec(500));
        assert!(matches!(big, Err(Error::HypothesisViolated { .. })));
    }

    #[test]
    fn markoff_cascade_decays() {
        let mk = ParameterQuadruple::markoff();
        let s0 = seed_markoff(&mk);
        let center = [re(0.0); 3];
        let eps = fit_epsilon(&s0, &mk, &center, 0.5, &spec(1000), 12).unwrap();
        let opts = CascadeOptions { sample: spec(1000), expansion: Expansion::Canonical };
        let rep = run_cascade(&s0, &mk, &budget_for(eps), &center, 3, &opts).unwrap();
        assert!(rep.decay_ok, "{:?}", rep.level_sups());
        let sups = rep.level_sups();
        for n in 1..sups.len() {
            assert!(sups[n] <= 0.5 * sups[n - 1]);
        }
        for l in &rep.levels[1..] {
            assert!(l.elements.iter().all(|w| !w.is_empty()));
            assert!(!commutes(&l.elements[0], &l.elements[1]));
        }
    }

    #[test]
    fn loose_seed_is_rejected() {
        let mk = ParameterQuadruple::markoff();
        let s0 = seed_markoff(&mk);
        let opts = CascadeOptions { sample: spec(300), expansion: Expansion::Canonical };
        let r = run_cascade(&s0, &mk, &budget_for(0.5), &[re(0.0); 3], 2, &opts);
        assert!(matches!(r, Err(Error::SeedTooLoose { .. })));
    }

    #[test]
    fn word_lengths_grow_at_most_fourfold() {
        let mut l = seed_markoff(&ParameterQuadruple::markoff());
        for _ in 0..4 {
            let next = next_level(&l, Expansion::Canonical).unwrap();
            let prev_max = l.elements.iter().map(Word::len).max().unwrap();
            assert!(next.elements.iter().all(|w| w.len() <= 4 * prev_max && !w.is_empty()));
            l = next;
        }
    }

    #[test]
    fn full_expansion_is_capped() {
        let l0 = seed_markoff(&ParameterQuadruple::markoff());
        let l1 = next_level(&l0, Expansion::Full).unwrap();
        // commutators of h and h⁻¹ vanish, the other 8 ordered pairs survive
        assert_eq!(l1.elements.len(), 8);
        let l3 = CommutatorLevel::unmeasured(3, l1.elements.clone());
        assert!(next_level(&l3, Expansion::Full).is_err());
    }
}
