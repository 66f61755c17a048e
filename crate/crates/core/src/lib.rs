//! Dynamics of the group generated by the three Vieta involutions on the
//! family of cubic surfaces
//!
//! ```text
//! x² + y² + z² + xyz = Ax + By + Cz + D.
//! ```
//!
//! The crate is organised bottom-up:
//!
//! * [`word`] holds exact free-product combinatorics and the integer
//!   representation of the even subgroup into Γ(2).
//! * [`params`] and [`surface`] describe parameter families and the surface
//!   geometry (residuals, singular points, the invariant 2-form).
//! * [`action`] evaluates words on points, with Jacobians.
//! * [`fiber`], [`fatou`], [`cascade`], [`infinity`], [`picard`] and
//!   [`fixed`] implement the individual experiments.
//! * [`explorer`] runs deterministic parameter scans and renders heatmaps.

pub mod action;
pub mod cascade;
pub mod cfmt;
pub mod error;
pub mod explorer;
pub mod fatou;
pub mod fiber;
pub mod fixed;
pub mod infinity;
pub mod linalg;
pub mod params;
pub mod picard;
pub mod poly;
pub mod sampling;
pub mod scalar;
pub mod surface;
pub mod word;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;
pub use params::{KappaQuadruple, ParamFamily, ParameterQuadruple, TraceQuadruple};
pub use scalar::{DdComplex, Scalar, WideComplex};
pub use surface::SurfacePoint;
pub use word::{ElementClass, ElementKind, InfinityVertex, IntegerMatrix2, Letter, Parity, Word};

/// A point of ℂ³.
pub type Point = [C64; 3];

/// Euclidean norm of a point of ℂ³.
pub fn norm3(q: &Point) -> f64 {
    (q[0].norm_sqr() + q[1].norm_sqr() + q[2].norm_sqr()).sqrt()
}

/// Euclidean distance between two points of ℂ³.
pub fn dist3(a: &Point, b: &Point) -> f64 {
    let d = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    norm3(&d)
}

/// Shorthand for a real complex number.
#[inline]
pub fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}
