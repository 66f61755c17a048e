//! The parabolic generators restricted to their invariant fibers.
//!
//! `g_x` preserves `x`, and on the conic `S ∩ {x = c}` it is affine in
//! `(y, z)`:
//!
//! ```text
//! (y, z) ↦ [[−1, −c], [c, c² − 1]] (y, z) + (B, C − cB).
//! ```
//!
//! `g_y` and `g_z` behave the same way in the cyclic coordinates `(z, x)`
//! and `(x, y)`.

use crate::action::apply_word;
use crate::linalg::{self, Mat2};
use crate::params::ParameterQuadruple;
use crate::surface::SurfacePoint;
use crate::word::{Letter, Word};
use crate::{cfmt, Error, Result, C64};
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FiberKind {
    Elliptic,
    Loxodromic,
    ParabolicFiber,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiberClassification {
    pub kind: FiberKind,
    #[serde(with = "cfmt::complex_vec_2")]
    pub multipliers: [C64; 2],
    /// `θ ∈ (0, 1)` with `c = 2 cos(πθ)`, for elliptic fibers.
    pub rotation: Option<f64>,
}

/// Linear part of `g_axis` on the fiber `{q_axis = c}`.
pub fn fiber_linear_part(_p: &ParameterQuadruple, _axis: Letter, c: C64) -> Mat2 {
    [[C64::new(-1.0, 0.0), -c], [c, c * c - 1.0]]
}

/// Linear part and translation of `g_axis` on the fiber.
pub fn fiber_map(p: &ParameterQuadruple, axis: Letter, c: C64) -> (Mat2, [C64; 2]) {
    let abc = p.abc();
    let (j, k) = axis.others();
    (fiber_linear_part(p, axis, c), [abc[j], abc[k] - c * abc[j]])
}

pub fn classify_fiber(p: &ParameterQuadruple, axis: Letter, c: C64) -> FiberClassification {
    let m = fiber_linear_part(p, axis, c);
    let multipliers = linalg::eigenvalues2(&m);
    let tol = 1e-12;
    if (c - 2.0).norm() <= tol || (c + 2.0).norm() <= tol {
        return FiberClassification { kind: FiberKind::ParabolicFiber, multipliers, rotation: None };
    }
    if c.im.abs() <= tol && c.re.abs() < 2.0 {
        let theta = (c.re / 2.0).acos() / std::f64::consts::PI;
        let e = C64::from_polar(1.0, 2.0 * std::f64::consts::PI * theta);
        return FiberClassification { kind: FiberKind::Elliptic, multipliers: [e, e.conj()], rotation: Some(theta) };
    }
    FiberClassification { kind: FiberKind::Loxodromic, multipliers, rotation: None }
}

/// Fiber values where the conic `S ∩ {q_axis = c}` degenerates: the roots of
/// `(c² − A_i c − D)(4 − c²) − (A_j² + A_k² − c A_j A_k)`, where the conic
/// acquires a singular point, together with `c = ±2`, where it becomes
/// tangent to the line at infinity.
pub fn bad_fiber_values(p: &ParameterQuadruple, axis: Letter) -> Vec<C64> {
    let abc = p.abc();
    let i = axis.index();
    let (j, k) = axis.others();
    let (a, b, c, d) = (abc[i], abc[j], abc[k], p.d);
    let quartic = [
        -(d * 4.0) - b * b - c * c,
        -(a * 4.0) + b * c,
        d + 4.0,
        a,
        C64::new(-1.0, 0.0),
    ];
    let mut v = crate::poly::roots(&quartic);
    v.push(C64::new(2.0, 0.0));
    v.push(C64::new(-2.0, 0.0));
    v
}

/// Conservative membership test for the bad set.
pub fn is_bad_fiber(c: C64, bad: &[C64]) -> bool {
    bad.iter().any(|&b| (b - c).norm() <= 1e-6)
}

/// Tube `{|q_axis − center| < radius}` around a fiber.
#[derive(Debug, Clone, PartialEq)]
pub struct TubeSpec {
    pub axis: Letter,
    pub center: C64,
    pub radius: f64,
}

impl TubeSpec {
    /// Fails if the closed disk meets one of the supplied bad values.
    pub fn new(axis: Letter, center: C64, radius: f64, bad: &[C64]) -> Result<Self> {
        if !(radius > 0.0) {
            return Err(Error::InvalidInput("tube radius must be positive".into()));
        }
        if let Some(b) = bad.iter().find(|&&b| (b - center).norm() <= radius) {
            return Err(Error::InvalidInput(format!("tube meets bad fiber {}", cfmt::format_c64(*b))));
        }
        Ok(TubeSpec { axis, center, radius })
    }

    pub fn contains(&self, q: &crate::Point) -> bool {
        (q[self.axis.index()] - self.center).norm() < self.radius
    }
}

/// Open box in the two fiber coordinates: real and imaginary parts within
/// `half_width` of the center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TargetBox {
    pub center: [C64; 2],
    pub half_width: f64,
}

impl TargetBox {
    pub fn contains(&self, u: &[C64; 2]) -> bool {
        (0..2).all(|i| {
            let d = u[i] - self.center[i];
            d.re.abs() < self.half_width && d.im.abs() < self.half_width
        })
    }
}

fn fiber_coords(axis: Letter, q: &crate::Point) -> [C64; 2] {
    let (j, k) = axis.others();
    [q[j], q[k]]
}

/// Smallest `|n| ≤ n_max` with `g_axis^n(q)` in the target, searching
/// `n = 0, 1, −1, 2, −2, …`.
pub fn find_return_iterate(
    p: &ParameterQuadruple,
    tube: &TubeSpec,
    q: &SurfacePoint,
    target: &TargetBox,
    n_max: u64,
) -> Result<Option<i64>> {
    if !tube.contains(&q.q) {
        return Err(Error::InvalidInput("starting point is outside the tube".into()));
    }
    let axis = tube.axis;
    let c0 = q.q[axis.index()];
    if target.contains(&fiber_coords(axis, &q.q)) {
        return Ok(Some(0));
    }
    let fwd = Word::g(axis);
    let bwd = fwd.inverse();
    let (mut qf, mut qb) = (q.q, q.q);
    let drift_tol = 1e-6 * (1.0 + c0.norm());
    for n in 1..=n_max as i64 {
        for (sign, pt, w) in [(1i64, &mut qf, &fwd), (-1, &mut qb, &bwd)] {
            *pt = apply_word(p, w, pt)?;
            let drift = (pt[axis.index()] - c0).norm();
            if drift > drift_tol {
                return Err(Error::EscapedTube { step: sign * n, drift });
            }
            if target.contains(&fiber_coords(axis, pt)) {
                return Ok(Some(sign * n));
            }
        }
    }
    Ok(None)
}

/// A row of the fiber classification table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberRow {
    #[serde(with = "cfmt::complex")]
    pub c: C64,
    pub kind: FiberKind,
    /// `θ` for elliptic fibers, otherwise the larger multiplier modulus.
    pub value: f64,
}

pub fn classification_row(p: &ParameterQuadruple, axis: Letter, c: C64) -> FiberRow {
    let f = classify_fiber(p, axis, c);
    let value = f.rotation.unwrap_or_else(|| f.multipliers[0].norm().max(f.multipliers[1].norm()));
    FiberRow { c, kind: f.kind, value }
}
