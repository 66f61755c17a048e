//! Dynamics near the triangle at infinity.
//!
//! A point with one coordinate much larger than the other two sits near a
//! vertex `v_i` of the triangle at infinity; the ratios of the small
//! coordinates to the big one are its chart coordinates there. Hyperbolic
//! words with distinct indeterminacy and attracting vertices contract such
//! neighbourhoods super-exponentially, and iterated commutators of them give
//! the `λ^(4ⁿ)` escape cascade implemented here.

use crate::action::{abc_as, apply_letter_s};
use crate::params::ParameterQuadruple;
use crate::scalar::{Scalar, WideComplex};
use crate::surface::surface_residual;
use crate::word::{InfinityVertex, Letter, Word};
use crate::{cfmt, Error, Point, Result, C64};
use serde::Serialize;

/// Default chart radius around each vertex.
pub const CHART_RADIUS: f64 = 0.2;

/// Standard coordinates near a vertex: the two other coordinates divided by
/// the dominant one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartPoint {
    pub vertex: InfinityVertex,
    #[serde(with = "cfmt::complex")]
    pub u1: C64,
    #[serde(with = "cfmt::complex")]
    pub u2: C64,
}

impl ChartPoint {
    pub fn dist(&self) -> f64 {
        (self.u1.norm_sqr() + self.u2.norm_sqr()).sqrt()
    }
}

fn dominant<S: Scalar>(q: &[S; 3]) -> usize {
    let ln = q.map(|z| z.ln_abs());
    (0..3).fold(0, |b, i| if ln[i] > ln[b] { i } else { b })
}

/// Chart at the dominant coordinate, with radius [`CHART_RADIUS`].
pub fn to_chart(q: &Point) -> Result<ChartPoint> {
    to_chart_with_radius(q, CHART_RADIUS)
}

pub fn to_chart_with_radius(q: &Point, radius: f64) -> Result<ChartPoint> {
    let i = dominant(q);
    let (j, k) = Letter::from_index(i).others();
    let (u1, u2) = (q[j] / q[i], q[k] / q[i]);
    if !(u1.norm() < radius && u2.norm() < radius) {
        return Err(Error::NotNearVertex);
    }
    Ok(ChartPoint { vertex: InfinityVertex::from_index(i), u1, u2 })
}

/// Nearest vertex and the Euclidean distance to it in its chart.
pub fn dist_to_vertices(q: &Point) -> Result<(InfinityVertex, f64)> {
    let c = to_chart(q)?;
    Ok((c.vertex, c.dist()))
}

/// Dominant vertex and `ln dist` for points far outside the range of `f64`.
pub fn ln_dist_wide(q: &[WideComplex; 3]) -> (InfinityVertex, f64) {
    let i = dominant(q);
    let (j, k) = Letter::from_index(i).others();
    let a = q[j].ln_abs() - q[i].ln_abs();
    let b = q[k].ln_abs() - q[i].ln_abs();
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    let ln = if hi == f64::NEG_INFINITY { hi } else { hi + 0.5 * (2.0 * (lo - hi)).exp().ln_1p() };
    (InfinityVertex::from_index(i), ln)
}

/// Which pair of non-commuting parabolic elements the `γ_{i,j}` are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GammaStyle {
    /// `h_x = g_x², h_y = g_y², h_z = g_z²`.
    MarkoffCommutators,
    /// `f_x = g_x^k`, `f_y = g_y⁻¹ g_x^k g_y`, `f_z = g_z⁻¹ g_x^k g_z`.
    DmCommutators(u32),
}

/// The six words `γ_{i,j}` (`i ≠ j`) with `Ind = v_i`, `Attr = v_j`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaSet {
    words: [[Option<Word>; 3]; 3],
}

impl GammaSet {
    /// `γ_{i,j}` for vertices `i ≠ j`.
    pub fn get(&self, i: InfinityVertex, j: InfinityVertex) -> &Word {
        self.words[i.index()][j.index()].as_ref().expect("γ_{i,i} is not defined")
    }

    pub fn iter(&self) -> impl Iterator<Item = (InfinityVertex, InfinityVertex, &Word)> {
        pairs().map(move |(i, j)| (i, j, self.get(i, j)))
    }
}

fn pairs() -> impl Iterator<Item = (InfinityVertex, InfinityVertex)> {
    (0..3).flat_map(|i| (0..3).filter(move |&j| j != i).map(move |j| (InfinityVertex::from_index(i), InfinityVertex::from_index(j))))
}

pub fn build_gamma_ij(style: GammaStyle) -> GammaSet {
    let (fx, fy, fz) = match style {
        GammaStyle::MarkoffCommutators => (Word::gx().pow(2), Word::gy().pow(2), Word::gz().pow(2)),
        GammaStyle::DmCommutators(k) => {
            let f = Word::gx().pow(k as i64);
            (f.clone(), f.conjugate_by(&Word::gy().inverse()), f.conjugate_by(&Word::gz().inverse()))
        }
    };
    let g12 = Word::commutator(&fx, &fz);
    let g13 = Word::commutator(&fy, &fz);
    let g23 = Word::commutator(&fy, &fx);
    let mut words: [[Option<Word>; 3]; 3] = Default::default();
    for (i, j, w) in [(0, 1, g12), (0, 2, g13), (1, 2, g23)] {
        words[j][i] = Some(w.inverse());
        words[i][j] = Some(w);
    }
    GammaSet { words }
}

/// `s_i` on the surface `S_{A,B,C,D}`. When the two roots of the quadratic
/// in `q_i` differ greatly in size the direct formula cancels, and the small
/// root is taken from the product of the roots instead.
pub fn apply_letter_on_surface<S: Scalar>(abc: &[S; 3], d: S, l: Letter, q: &[S; 3], div: impl Fn(S, S) -> S) -> [S; 3] {
    let i = l.index();
    let (j, k) = l.others();
    let direct = apply_letter_s(abc, l, q);
    let scale = q[i].ln_abs().max((q[j] * q[k]).ln_abs());
    if direct[i].ln_abs() < scale - 20.0 && q[i].ln_abs() > f64::NEG_INFINITY {
        let c = q[j] * q[j] + q[k] * q[k] - abc[j] * q[j] - abc[k] * q[k] - d;
        let mut out = *q;
        out[i] = div(c, q[i]);
        return out;
    }
    direct
}

/// Applies a word in wide-exponent arithmetic on `S_{A,B,C,D}`.
pub fn apply_word_wide(p: &ParameterQuadruple, w: &Word, q: &[WideComplex; 3]) -> [WideComplex; 3] {
    let abc: [WideComplex; 3] = abc_as(p);
    let d = WideComplex::from_c64(p.d);
    let mut r = *q;
    for l in w.application_order() {
        r = apply_letter_on_surface(&abc, d, l, &r, WideComplex::div);
    }
    r
}

/// One element of the cascade applied to the start point.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EscapeStep {
    pub n: u32,
    /// `gamma_i_j` on even levels, `tau_i` on odd ones.
    pub label: String,
    pub word_length: usize,
    pub expected: InfinityVertex,
    pub reached: InfinityVertex,
    /// Natural logarithm of the chart distance of the image.
    pub ln_dist: f64,
}

/// Recorded distances of `η_n(q)` to the vertex set.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EscapeCertificate {
    /// Largest level-0 ratio `dist(γ(q)) / dist(q)`.
    pub lambda: f64,
    pub ln_lambda: f64,
    #[serde(with = "cfmt::point")]
    pub start: Point,
    pub start_vertex: InfinityVertex,
    pub ln_dist_start: f64,
    pub chart_radius: f64,
    pub steps: Vec<EscapeStep>,
    /// Levels for which every image obeys the itinerary and
    /// `ln dist ≤ 4ⁿ ln λ + ln dist(q)`.
    pub verified_levels: u32,
    pub itinerary_ok: bool,
}

impl EscapeCertificate {
    /// `(n, vertex, ln dist)` for every recorded image.
    pub fn distances(&self) -> Vec<(u32, InfinityVertex, f64)> {
        self.steps.iter().map(|s| (s.n, s.reached, s.ln_dist)).collect()
    }

    /// Largest `ln dist` at each level.
    pub fn level_ln_dist(&self) -> Vec<f64> {
        let levels = self.steps.iter().map(|s| s.n).max().map_or(0, |n| n + 1);
        (0..levels)
            .map(|n| self.steps.iter().filter(|s| s.n == n).map(|s| s.ln_dist).fold(f64::NEG_INFINITY, f64::max))
            .collect()
    }
}

enum Level {
    /// `γ^{(n)}_{i,j}`, indexed `[i][j]`.
    Gamma([[Option<Word>; 3]; 3]),
    /// `τ^{(n)}_i`.
    Tau([Word; 3]),
}

fn next(level: &Level) -> Level {
    match level {
        Level::Gamma(g) => Level::Tau(std::array::from_fn(|i| {
            let (j, k) = Letter::from_index(i).others();
            let (j, k) = (j.min(k), j.max(k));
            Word::commutator(g[i][j].as_ref().unwrap(), g[i][k].as_ref().unwrap())
        })),
        Level::Tau(t) => {
            let mut g: [[Option<Word>; 3]; 3] = Default::default();
            for (i, j) in pairs() {
                g[i.index()][j.index()] = Some(Word::commutator(&t[j.index()], &t[i.index()]));
            }
            Level::Gamma(g)
        }
    }
}

/// Runs the cascade from `q` for levels `0..=n_max`, halving the chart
/// radius (and moving `q` closer to its vertex) up to four times when the
/// contraction fails.
pub fn escape_cascade(p: &ParameterQuadruple, gammas: &GammaSet, q: &Point, n_max: u32) -> Result<EscapeCertificate> {
    let mut radius = CHART_RADIUS;
    let mut start = *q;
    let mut last_err = Error::NotNearVertex;
    for _ in 0..5 {
        match escape_once(p, gammas, &start, n_max, radius) {
            Ok(cert) => return Ok(cert),
            Err(e @ Error::ContractionFailure { .. }) => last_err = e,
            Err(e) => return Err(e),
        }
        radius /= 2.0;
        start = closer_to_vertex(p, &start)?;
    }
    Err(last_err)
}

/// Point of `S_{A,B,C,D}` with the two small coordinates halved and the
/// dominant one re-solved on the surface.
fn closer_to_vertex(p: &ParameterQuadruple, q: &Point) -> Result<Point> {
    let i = dominant(q);
    let (j, k) = Letter::from_index(i).others();
    let abc = p.abc();
    let mut out = *q;
    out[j] /= 2.0;
    out[k] /= 2.0;
    let b = out[j] * out[k] - abc[i];
    let c = out[j] * out[j] + out[k] * out[k] - abc[j] * out[j] - abc[k] * out[k] - p.d;
    let roots = crate::poly::quadratic_roots(C64::new(1.0, 0.0), b, c);
    out[i] = if (roots.0 - q[i]).norm() <= (roots.1 - q[i]).norm() { roots.0 } else { roots.1 };
    Ok(out)
}

fn escape_once(p: &ParameterQuadruple, gammas: &GammaSet, q: &Point, n_max: u32, radius: f64) -> Result<EscapeCertificate> {
    let chart = to_chart_with_radius(q, radius)?;
    let a = chart.vertex.index();
    let ln_dist_start = chart.dist().ln();
    let qw = q.map(WideComplex::from_c64);
    let mut level = Level::Gamma(gammas.words.clone());
    let mut steps = Vec::new();
    for n in 0..=n_max {
        let mut batch = Vec::new();
        match &level {
            Level::Gamma(g) => {
                for (i, j) in pairs().filter(|(i, _)| i.index() != a) {
                    let w = g[i.index()][j.index()].as_ref().unwrap();
                    batch.push((format!("gamma_{}_{}", i.index() + 1, j.index() + 1), w, j));
                }
            }
            Level::Tau(t) => {
                for i in (0..3).filter(|&i| i != a) {
                    batch.push((format!("tau_{}", i + 1), &t[i], InfinityVertex::from_index(i)));
                }
            }
        }
        for (label, w, expected) in batch {
            let img = apply_word_wide(p, w, &qw);
            let (reached, ln_dist) = ln_dist_wide(&img);
            steps.push(EscapeStep { n, label, word_length: w.len(), expected, reached, ln_dist });
        }
        if n < n_max {
            level = next(&level);
        }
    }
    let ln_lambda = steps.iter().filter(|s| s.n == 0).map(|s| s.ln_dist).fold(f64::NEG_INFINITY, f64::max) - ln_dist_start;
    if !(ln_lambda < 0.0) {
        return Err(Error::ContractionFailure { level: 0 });
    }
    let mut verified_levels = 0;
    let mut itinerary_ok = true;
    for n in 0..=n_max {
        let bound = 4f64.powi(n as i32) * ln_lambda + ln_dist_start;
        for s in steps.iter().filter(|s| s.n == n) {
            if s.reached != s.expected {
                itinerary_ok = false;
            }
            // ln dist saturates once it leaves the f64 range of the exponent
            let contracted = s.ln_dist <= bound || !s.ln_dist.is_finite();
            if s.reached != s.expected || !contracted {
                return Err(Error::ContractionFailure { level: n as usize });
            }
        }
        verified_levels = n + 1;
    }
    Ok(EscapeCertificate {
        lambda: ln_lambda.exp(),
        ln_lambda,
        start: *q,
        start_vertex: chart.vertex,
        ln_dist_start,
        chart_radius: radius,
        steps,
        verified_levels,
        itinerary_ok,
    })
}

/// Parameters `(0, 0, 0, D)` with `D` chosen so that `q` lies on the surface.
pub fn markoff_through(q: &Point) -> ParameterQuadruple {
    let mk = ParameterQuadruple::markoff();
    ParameterQuadruple { d: surface_residual(&mk, q), ..mk }
}
