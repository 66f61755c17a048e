//! Low-discrepancy samples of balls in ℂ³, optionally restricted to a surface.

use crate::params::ParameterQuadruple;
use crate::surface::lift_xy;
use crate::{dist3, Point, C64};
use serde::{Deserialize, Serialize};

/// Where sample points live.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Domain {
    /// The full ball in ℂ³.
    Ambient,
    /// The ball intersected with the surface.
    Surface,
}

const INDEX_CAP: u32 = 1 << 16;

fn cube(index: u32, dim: u32, seed: u32) -> f64 {
    2.0 * sobol_burley::sample(index, dim, seed) as f64 - 1.0
}

/// Owen-scrambled Sobol points in `B_radius(center)`.
///
/// In the ambient case a quarter of the points are pushed radially onto the
/// boundary sphere (shrunk by `1e-9` relative): each coordinate of a
/// holomorphic displacement is subharmonic, so its sup over the closed ball
/// sits on the boundary. On the surface, `(x, y)` offsets are drawn from a
/// 4-ball and lifted through the quadratic in `z`; both lifts are kept when
/// they land inside the ball.
pub fn ball_samples(
    p: &ParameterQuadruple,
    center: &Point,
    radius: f64,
    n: usize,
    domain: Domain,
    seed: u32,
) -> Vec<Point> {
    let mut out = Vec::with_capacity(n);
    let mut seed = seed;
    let mut index = 0u32;
    let mut rounds = 0;
    while out.len() < n && rounds < 64 {
        if index == INDEX_CAP {
            index = 0;
            seed = seed.wrapping_add(0x9e37_79b9);
            rounds += 1;
        }
        let i = index;
        index += 1;
        match domain {
            Domain::Ambient => {
                let u: Vec<f64> = (0..6).map(|d| cube(i, d, seed)).collect();
                let len = u.iter().map(|v| v * v).sum::<f64>().sqrt();
                if len >= 1.0 || len == 0.0 {
                    continue;
                }
                let s = if out.len() % 4 == 3 { radius * (1.0 - 1e-9) / len } else { radius };
                out.push([
                    center[0] + C64::new(u[0], u[1]) * s,
                    center[1] + C64::new(u[2], u[3]) * s,
                    center[2] + C64::new(u[4], u[5]) * s,
                ]);
            }
            Domain::Surface => {
                let u: Vec<f64> = (0..4).map(|d| cube(i, d, seed)).collect();
                if u.iter().map(|v| v * v).sum::<f64>() >= 1.0 {
                    continue;
                }
                let x = center[0] + C64::new(u[0], u[1]) * radius;
                let y = center[1] + C64::new(u[2], u[3]) * radius;
                for q in lift_xy(p, x, y) {
                    if out.len() < n && dist3(&q, center) < radius {
                        out.push(q);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::re;
    use crate::surface::surface_residual;

    #[test]
    fn ambient_samples_fill_the_ball() {
        let p = ParameterQuadruple::markoff();
        let c = [re(1.0), re(-1.0), C64::new(0.0, 2.0)];
        let pts = ball_samples(&p, &c, 0.5, 2000, Domain::Ambient, 7);
        assert_eq!(pts.len(), 2000);
        assert!(pts.iter().all(|q| dist3(q, &c) < 0.5));
        let near_boundary = pts.iter().filter(|q| dist3(q, &c) > 0.4999).count();
        assert!(near_boundary >= 450);
    }

    #[test]
    fn surface_samples_are_on_the_surface() {
        let p = ParameterQuadruple::markoff();
        let pts = ball_samples(&p, &[re(0.0); 3], 0.1, 500, Domain::Surface, 3);
        assert_eq!(pts.len(), 500);
        for q in &pts {
            assert!(surface_residual(&p, q).norm() < 1e-15);
            assert!(crate::norm3(q) < 0.1);
        }
    }

    #[test]
    fn samples_are_deterministic() {
        let p = ParameterQuadruple::markoff();
        let a = ball_samples(&p, &[re(0.0); 3], 1.0, 100, Domain::Ambient, 1);
        let b = ball_samples(&p, &[re(0.0); 3], 1.0, 100, Domain::Ambient, 1);
        assert_eq!(a, b);
        let c = ball_samples(&p, &[re(0.0); 3], 1.0, 100, Domain::Ambient, 2);
        assert_ne!(a, c);
    }
}
