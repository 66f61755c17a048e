//! Evaluation of letters and words on points of ℂ³.

use crate::linalg::{self, Mat2, Mat3};
use crate::params::ParameterQuadruple;
use crate::scalar::Scalar;
use crate::surface::{self, SurfacePoint};
use crate::word::{Letter, Word};
use crate::{cfmt, dist3, norm3, Error, Point, Result, C64};
use serde::Serialize;

/// Coordinates above this modulus count as escaped.
pub const ESCAPE_CUTOFF: f64 = 1e150;

/// `s_i`: replaces the `i`-th coordinate by the other root of the quadratic
/// in that variable, `q_i ↦ A_i − q_i − q_j q_k`.
#[inline]
pub fn apply_letter(p: &ParameterQuadruple, l: Letter, q: &Point) -> Point {
    apply_letter_s(&p.abc(), l, q)
}

/// Generic form of [`apply_letter`]; `abc` holds `(A, B, C)`.
#[inline]
pub fn apply_letter_s<S: Scalar>(abc: &[S; 3], l: Letter, q: &[S; 3]) -> [S; 3] {
    let i = l.index();
    let (j, k) = l.others();
    let mut out = *q;
    out[i] = abc[i] - q[i] - q[j] * q[k];
    out
}

/// Applies a word (right-most letter first) without an escape check.
pub fn apply_word_s<S: Scalar>(abc: &[S; 3], w: &Word, q: &[S; 3]) -> [S; 3] {
    let mut r = *q;
    for l in w.application_order() {
        r = apply_letter_s(abc, l, &r);
    }
    r
}

/// Lifts `(A, B, C)` into the scalar type.
pub fn abc_as<S: Scalar>(p: &ParameterQuadruple) -> [S; 3] {
    p.abc().map(S::from_c64)
}

/// Applies a word, reporting escape past [`ESCAPE_CUTOFF`].
pub fn apply_word(p: &ParameterQuadruple, w: &Word, q: &Point) -> Result<Point> {
    let abc = p.abc();
    let mut r = *q;
    for (step, l) in w.application_order().enumerate() {
        r = apply_letter_s(&abc, l, &r);
        if !r.iter().all(|z| z.norm() <= ESCAPE_CUTOFF) {
            return Err(Error::Overflow { step: step + 1, partial: r });
        }
    }
    Ok(r)
}

/// Value and derivative of a word map at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub value: Point,
    pub jacobian: Mat3,
}

/// Jacobian of a single letter.
pub fn letter_jacobian(l: Letter, q: &Point) -> Mat3 {
    let mut m = linalg::identity3();
    let i = l.index();
    let (j, k) = l.others();
    m[i][i] = C64::new(-1.0, 0.0);
    m[i][j] = -q[k];
    m[i][k] = -q[j];
    m
}

/// Value and Jacobian of a word, by the chain rule in application order.
pub fn word_jet(p: &ParameterQuadruple, w: &Word, q: &Point) -> Result<Jet> {
    let abc = p.abc();
    let mut r = *q;
    let mut jac = linalg::identity3();
    for (step, l) in w.application_order().enumerate() {
        jac = linalg::mul3(&letter_jacobian(l, &r), &jac);
        r = apply_letter_s(&abc, l, &r);
        if !r.iter().all(|z| z.norm() <= ESCAPE_CUTOFF) {
            return Err(Error::Overflow { step: step + 1, partial: r });
        }
    }
    Ok(Jet { value: r, jacobian: jac })
}

/// Derivative of a word at a fixed point, compressed to the tangent plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictedDerivative {
    pub matrix2: Mat2,
}

impl RestrictedDerivative {
    pub fn trace(&self) -> C64 {
        linalg::trace2(&self.matrix2)
    }

    pub fn det(&self) -> C64 {
        linalg::det2(&self.matrix2)
    }

    pub fn eigenvalues(&self) -> [C64; 2] {
        linalg::eigenvalues2(&self.matrix2)
    }
}

impl Serialize for RestrictedDerivative {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let m = &self.matrix2;
        let rows: Vec<Vec<String>> = m.iter().map(|r| r.iter().map(|&z| cfmt::format_c64(z)).collect()).collect();
        rows.serialize(s)
    }
}

fn check_fixed(p: &ParameterQuadruple, w: &Word, q: &Point) -> Result<Jet> {
    let jet = word_jet(p, w, q)?;
    let disp = dist3(&jet.value, q);
    if disp > 1e-8 * (1.0 + norm3(q)) {
        return Err(Error::NotFixedPoint(disp));
    }
    Ok(jet)
}

/// The tangent-plane derivative of `w` at a smooth fixed point.
pub fn restricted_derivative(p: &ParameterQuadruple, w: &Word, q: &SurfacePoint) -> Result<RestrictedDerivative> {
    let jet = check_fixed(p, w, &q.q)?;
    let basis = surface::tangent_basis(p, &q.q).ok_or(Error::SingularPoint)?;
    Ok(RestrictedDerivative { matrix2: linalg::compress(&jet.jacobian, &basis) })
}

/// The two "surface" eigenvalues of `w` at a fixed point: those of the
/// restricted derivative at smooth points, and at singular points the two
/// eigenvalues of the 3×3 Jacobian remaining after removing the one
/// closest to 1.
pub fn tangent_eigenvalues(p: &ParameterQuadruple, w: &Word, q: &SurfacePoint) -> Result<[C64; 2]> {
    match restricted_derivative(p, w, q) {
        Ok(r) => Ok(r.eigenvalues()),
        Err(Error::SingularPoint) => {
            let jet = word_jet(p, w, &q.q)?;
            let ev = linalg::eigenvalues3(&jet.jacobian);
            let k = (0..3).min_by(|&i, &j| (ev[i] - 1.0).norm().total_cmp(&(ev[j] - 1.0).norm())).unwrap();
            let rest: Vec<C64> = (0..3).filter(|&i| i != k).map(|i| ev[i]).collect();
            Ok([rest[0], rest[1]])
        }
        Err(e) => Err(e),
    }
}

/// `(w*Ω)/Ω` at a smooth point: `+1` for even words, `−1` for odd ones.
pub fn pullback_ratio(p: &ParameterQuadruple, w: &Word, q: &Point) -> Result<C64> {
    let jet = word_jet(p, w, q)?;
    let [v1, v2] = surface::tangent_basis(p, q).ok_or(Error::SingularPoint)?;
    let (u1, u2) = (linalg::apply3(&jet.jacobian, &v1), linalg::apply3(&jet.jacobian, &v2));
    let here = surface::omega_in_chart(p, q, surface::best_chart(p, q), &v1, &v2)?;
    let there = surface::omega_in_chart(p, &jet.value, surface::best_chart(p, &jet.value), &u1, &u2)?;
    Ok(there / here)
}

/// One row of an orbit trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRow {
    pub step: usize,
    /// Letters applied so far, as a word.
    pub prefix: String,
    #[serde(with = "cfmt::complex")]
    pub x: C64,
    #[serde(with = "cfmt::complex")]
    pub y: C64,
    #[serde(with = "cfmt::complex")]
    pub z: C64,
    pub residual: f64,
}

/// Point after each letter of `w`; stops early if the orbit escapes.
pub fn orbit_trace(p: &ParameterQuadruple, w: &Word, q: &Point) -> Vec<OrbitRow> {
    let row = |step: usize, applied: &Word, r: &Point| OrbitRow {
        step,
        prefix: applied.to_string(),
        x: r[0],
        y: r[1],
        z: r[2],
        residual: surface::surface_residual(p, r).norm(),
    };
    let mut out = vec![row(0, &Word::identity(), q)];
    let mut r = *q;
    let mut applied = Word::identity();
    for (k, l) in w.application_order().enumerate() {
        r = apply_letter(p, l, &r);
        applied = Word::letter(l).compose(&applied);
        out.push(row(k + 1, &applied, &r));
        if !r.iter().all(|z| z.norm() <= ESCAPE_CUTOFF) {
            break;
        }
    }
    out
}
