//! Geometry of a single surface: residual, gradient, singular points,
//! sampling and the invariant holomorphic 2-form.

use crate::linalg::{self, Vec3};
use crate::params::ParameterQuadruple;
use crate::poly;
use crate::{cfmt, norm3, Error, Point, Result, C64};
use serde::{Deserialize, Serialize};

/// A point together with its cached residual modulus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SurfacePoint {
    #[serde(with = "cfmt::point")]
    pub q: Point,
    pub residual: f64,
}

impl SurfacePoint {
    pub fn new(p: &ParameterQuadruple, q: Point) -> Self {
        SurfacePoint { q, residual: surface_residual(p, &q).norm() }
    }

    /// Residual within `tol · (1 + ‖q‖³)`.
    pub fn on_surface(&self, tol: f64) -> bool {
        self.residual <= tol * (1.0 + norm3(&self.q).powi(3))
    }
}

/// `x² + y² + z² + xyz − Ax − By − Cz − D`.
pub fn surface_residual(p: &ParameterQuadruple, q: &Point) -> C64 {
    let [x, y, z] = *q;
    x * x + y * y + z * z + x * y * z - p.a * x - p.b * y - p.c * z - p.d
}

/// `(2x + yz − A, 2y + zx − B, 2z + xy − C)`.
pub fn gradient(p: &ParameterQuadruple, q: &Point) -> Vec3 {
    let [x, y, z] = *q;
    [x * 2.0 + y * z - p.a, y * 2.0 + z * x - p.b, z * 2.0 + x * y - p.c]
}

/// Whether the point is on the surface at the given relative tolerance.
pub fn on_surface(p: &ParameterQuadruple, q: &Point, tol: f64) -> bool {
    SurfacePoint::new(p, *q).on_surface(tol)
}

/// The two points over `(x, y)`, roots of
/// `z² + (xy − C) z + (x² + y² − Ax − By − D) = 0`.
pub fn lift_xy(p: &ParameterQuadruple, x: C64, y: C64) -> [Point; 2] {
    let b = x * y - p.c;
    let c = x * x + y * y - p.a * x - p.b * y - p.d;
    let (z1, z2) = poly::quadratic_roots(C64::new(1.0, 0.0), b, c);
    [[x, y, z1], [x, y, z2]]
}

/// Zeros of the gradient, i.e. common fixed points of the three
/// involutions in ℂ³ (not necessarily on the surface).
///
/// Solving the first two equations for `x, y` leaves the quintic
/// `2z(4−z²)² + (2A−zB)(2B−zA) − C(4−z²)² = 0`; its leading coefficient is 2,
/// so the elimination never collapses. The planes `z = ±2` are handled
/// separately, since there the linear system for `x, y` is singular.
pub fn critical_points(p: &ParameterQuadruple) -> Vec<Point> {
    let (a, b, c) = (p.a, p.b, p.c);
    let quintic = [
        a * b * 4.0 - c * 16.0,
        C64::new(32.0, 0.0) - a * a * 2.0 - b * b * 2.0,
        a * b + c * 8.0,
        C64::new(-16.0, 0.0),
        -c,
        C64::new(2.0, 0.0),
    ];
    let mut out: Vec<Point> = Vec::new();
    let mut degenerate = Vec::new();
    for z0 in [2.0, -2.0] {
        // both numerators vanish iff B = z0·A/2
        if (b - a * (z0 / 2.0)).norm() <= 1e-12 * (1.0 + a.norm() + b.norm()) {
            degenerate.push(z0);
            // x = t, y = (A − 2t)/z0, and 2z0 + t(A − 2t)/z0 = C
            let (t1, t2) = poly::quadratic_roots(C64::new(-2.0, 0.0), a, C64::new(8.0, 0.0) - c * z0);
            for t in [t1, t2] {
                out.push([t, (a - t * 2.0) / z0, C64::new(z0, 0.0)]);
            }
        }
    }
    for z in poly::roots(&quintic) {
        let s = C64::new(4.0, 0.0) - z * z;
        if degenerate.iter().any(|&z0| (z - z0).norm() < 1e-5) || s.norm() < 1e-14 {
            continue;
        }
        let x = (a * 2.0 - z * b) / s;
        let y = (b * 2.0 - z * a) / s;
        out.push([x, y, z]);
    }
    let mut polished: Vec<Point> = Vec::new();
    for q in out {
        let q = polish_critical(p, q);
        if polished.iter().all(|r| crate::dist3(r, &q) > 1e-8 * (1.0 + norm3(&q))) {
            polished.push(q);
        }
    }
    polished
}

/// Newton on `∇F = 0` (Hessian `[[2,z,y],[z,2,x],[y,x,2]]`).
fn polish_critical(p: &ParameterQuadruple, mut q: Point) -> Point {
    for _ in 0..20 {
        let g = gradient(p, &q);
        let [x, y, z] = q;
        let two = C64::new(2.0, 0.0);
        let h = [[two, z, y], [z, two, x], [y, x, two]];
        let Some(d) = linalg::solve3(&h, &g) else { break };
        let next = [q[0] - d[0], q[1] - d[1], q[2] - d[2]];
        let improved = norm3(&gradient(p, &next)) <= norm3(&g);
        if improved {
            q = next;
        }
        if !improved || norm3(&d) <= 1e-17 * (1.0 + norm3(&q)) {
            break;
        }
    }
    q
}

/// Singular points: critical points lying on the surface.
pub fn singular_points(p: &ParameterQuadruple) -> Result<Vec<SurfacePoint>> {
    let pts: Vec<SurfacePoint> = critical_points(p)
        .into_iter()
        .map(|q| SurfacePoint::new(p, q))
        .filter(|s| s.on_surface(1e-9))
        .collect();
    for s in &pts {
        if norm3(&gradient(p, &s.q)) > 1e-9 * (1.0 + norm3(&s.q)) {
            return Err(Error::SolverDegenerate(format!("polishing stalled at {}", cfmt::format_point(&s.q))));
        }
    }
    Ok(pts)
}

/// Coordinate charts for the invariant 2-form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    XY,
    YZ,
    ZX,
}

impl Chart {
    pub const ALL: [Chart; 3] = [Chart::XY, Chart::YZ, Chart::ZX];
}

/// Chart denominator of the 2-form at a point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct VolumeFormValue {
    pub chart: Chart,
    #[serde(with = "cfmt::complex")]
    pub denominator: C64,
}

/// `2z+xy−C` (XY), `2x+yz−A` (YZ) or `2y+zx−B` (ZX): the partial derivative
/// of the defining polynomial in the eliminated variable.
pub fn chart_denominator(p: &ParameterQuadruple, q: &Point, chart: Chart) -> VolumeFormValue {
    let g = gradient(p, q);
    let denominator = match chart {
        Chart::XY => g[2],
        Chart::YZ => g[0],
        Chart::ZX => g[1],
    };
    VolumeFormValue { chart, denominator }
}

/// The 2-form in one chart, evaluated on a pair of tangent vectors.
pub fn omega_in_chart(p: &ParameterQuadruple, q: &Point, chart: Chart, v: &Vec3, w: &Vec3) -> Result<C64> {
    let den = chart_denominator(p, q, chart).denominator;
    omega_with_denominator(chart, den, v, w)
}

fn omega_with_denominator(chart: Chart, den: C64, v: &Vec3, w: &Vec3) -> Result<C64> {
    if den.norm() < 1e-12 {
        return Err(Error::ChartDegenerate(den.norm()));
    }
    let (i, j) = match chart {
        Chart::XY => (0, 1),
        Chart::YZ => (1, 2),
        Chart::ZX => (2, 0),
    };
    Ok((v[i] * w[j] - v[j] * w[i]) / den)
}

/// Orthonormal basis of the tangent plane, `None` at singular points.
pub fn tangent_basis(p: &ParameterQuadruple, q: &Point) -> Option<[Vec3; 2]> {
    let g = gradient(p, q);
    if norm3(&g) <= 1e-12 * (1.0 + norm3(q).powi(2)) {
        return None;
    }
    linalg::kernel_basis(&g)
}

/// Ratio of the 2-form written in two charts, on a tangent frame at `q`.
/// Equals 1 wherever both charts are valid.
pub fn volume_form_ratio(p: &ParameterQuadruple, q: &SurfacePoint, a: Chart, b: Chart) -> Result<C64> {
    let [v, w] = tangent_basis(p, &q.q).ok_or(Error::SingularPoint)?;
    Ok(omega_in_chart(p, &q.q, a, &v, &w)? / omega_in_chart(p, &q.q, b, &v, &w)?)
}

/// The chart with the largest denominator at `q`.
pub fn best_chart(p: &ParameterQuadruple, q: &Point) -> Chart {
    let g = gradient(p, q);
    let k = (0..3).max_by(|&i, &j| g[i].norm().total_cmp(&g[j].norm())).unwrap();
    [Chart::YZ, Chart::ZX, Chart::XY][k]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;

    fn contains(pts: &[SurfacePoint], q: [f64; 3]) -> bool {
        pts.iter().any(|s| crate::dist3(&s.q, &q.map(re)) < 1e-9)
    }

    #[test]
    fn residual_examples() {
        let pic = ParameterQuadruple::picard();
        let mk = ParameterQuadruple::markoff();
        assert_eq!(surface_residual(&pic, &[re(-2.0); 3]), re(0.0));
        assert_eq!(surface_residual(&mk, &[re(0.0); 3]), re(0.0));
        assert_eq!(surface_residual(&mk, &[re(1.0), re(0.0), re(0.0)]), re(1.0));
    }

    #[test]
    fn gradient_examples() {
        let pic = ParameterQuadruple::picard();
        assert_eq!(gradient(&pic, &[re(-2.0); 3]), [re(0.0); 3]);
        let mk = ParameterQuadruple::markoff();
        assert_eq!(gradient(&mk, &[re(0.0), re(1.0), re(0.0)]), [re(0.0), re(2.0), re(0.0)]);
        let a = 0.37;
        let (dm, _) = ParameterQuadruple::dm(a);
        let g = gradient(&dm, &[re(a), re(2.0), re(2.0)]);
        assert!(norm3(&g) < 1e-14);
    }

    #[test]
    fn singular_points_of_named_families() {
        let pts = singular_points(&ParameterQuadruple::picard()).unwrap();
        assert_eq!(pts.len(), 4);
        for q in [[-2.0, -2.0, -2.0], [-2.0, 2.0, 2.0], [2.0, -2.0, 2.0], [2.0, 2.0, -2.0]] {
            assert!(contains(&pts, q));
        }
        let pts = singular_points(&ParameterQuadruple::dm(1.0).0).unwrap();
        assert_eq!(pts.len(), 3);
        for q in [[1.0, 2.0, 2.0], [2.0, 1.0, 2.0], [2.0, 2.0, 1.0]] {
            assert!(contains(&pts, q));
        }
        let pts = singular_points(&ParameterQuadruple::markoff()).unwrap();
        assert_eq!(pts.len(), 1);
        assert!(contains(&pts, [0.0; 3]));
        for s in &pts {
            assert!(s.residual < 1e-10);
        }
    }

    #[test]
    fn generic_parameters_have_smooth_surface() {
        let p = ParameterQuadruple::new(C64::new(0.3, 0.1), re(-1.2), C64::new(0.0, 0.7), re(2.5));
        assert!(singular_points(&p).unwrap().is_empty());
        assert_eq!(critical_points(&p).len(), 5);
    }

    #[test]
    fn lifted_points_lie_on_surface() {
        let p = ParameterQuadruple::new(re(1.0), C64::new(0.5, -0.5), re(2.0), re(-3.0));
        for q in lift_xy(&p, C64::new(0.3, 1.0), re(-2.0)) {
            assert!(surface_residual(&p, &q).norm() < 1e-13);
        }
    }

    #[test]
    fn two_form_agrees_across_charts() {
        let p = ParameterQuadruple::markoff();
        let q = lift_xy(&p, C64::new(0.7, 0.2), C64::new(-1.1, 0.4))[0];
        let s = SurfacePoint::new(&p, q);
        for (a, b) in [(Chart::XY, Chart::YZ), (Chart::YZ, Chart::ZX), (Chart::ZX, Chart::XY)] {
            let r = volume_form_ratio(&p, &s, a, b).unwrap();
            assert!((r - 1.0).norm() < 1e-12, "{a:?}/{b:?} = {r}");
        }
    }

    #[test]
    fn misprinted_denominator_breaks_chart_agreement() {
        // "2x + xy − C" in place of 2z + xy − C
        let p = ParameterQuadruple::new(re(0.5), re(1.0), re(-0.5), re(1.0));
        let q = lift_xy(&p, C64::new(0.7, 0.2), C64::new(-1.1, 0.4))[0];
        let [v, w] = tangent_basis(&p, &q).unwrap();
        let wrong = q[0] * 2.0 + q[0] * q[1] - p.c;
        let bad = omega_with_denominator(Chart::XY, wrong, &v, &w).unwrap();
        let good = omega_in_chart(&p, &q, Chart::YZ, &v, &w).unwrap();
        assert!((bad / good - 1.0).norm() > 1e-3);
    }

    #[test]
    fn degenerate_chart_is_reported() {
        let p = ParameterQuadruple::markoff();
        // on the Markoff surface, 2z + xy vanishes at (0, t, 0) only when t = 0;
        // pick a point with F_z = 0 by hand: (x, y, z) = (1, -2, 1) gives 2 - 2 = 0
        let q = [re(1.0), re(-2.0), re(1.0)];
        let [v, w] = [[re(1.0), re(0.0), re(0.0)], [re(0.0), re(1.0), re(0.0)]];
        assert!(matches!(omega_in_chart(&p, &q, Chart::XY, &v, &w), Err(Error::ChartDegenerate(_))));
    }
}
