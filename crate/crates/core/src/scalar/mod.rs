//! Scalar types used when evaluating words.
//!
//! Word maps only need ring operations, so everything generic over
//! [`Scalar`] is written with `+`, `-`, `*` and negation. Three
//! implementations are provided:
//!
//! * `Complex64` for ordinary work,
//! * [`DdComplex`], a double-double complex with about 32 significant digits,
//! * [`WideComplex`], a double mantissa with an unbounded binary exponent,
//!   for orbits whose coordinates leave the range of `f64`.

mod dd;
mod wide;

pub use dd::{DdComplex, DdReal};
pub use wide::WideComplex;

use crate::C64;
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

pub trait Scalar:
    Copy
    + Debug
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn from_c64(z: C64) -> Self;
    /// Nearest `Complex64`; may overflow to infinity or flush to zero.
    fn to_c64(self) -> C64;
    /// Natural logarithm of the modulus (`-inf` at zero).
    fn ln_abs(self) -> f64;
    fn is_finite(self) -> bool;

    fn zero() -> Self {
        Self::from_c64(C64::new(0.0, 0.0))
    }

    fn abs(self) -> f64 {
        self.to_c64().norm()
    }
}

impl Scalar for C64 {
    #[inline]
    fn from_c64(z: C64) -> Self {
        z
    }
    #[inline]
    fn to_c64(self) -> C64 {
        self
    }
    #[inline]
    fn ln_abs(self) -> f64 {
        self.norm().ln()
    }
    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
}

/// Selects the scalar used for an evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Precision {
    Double,
    #[serde(rename = "dd")]
    DoubleDouble,
    /// Start in double precision and switch to double-double once measured
    /// deviations fall below 1e-13.
    #[default]
    Auto,
}

impl std::str::FromStr for Precision {
    type Err = crate::Error;
    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "double" => Ok(Precision::Double),
            "dd" | "double-double" => Ok(Precision::DoubleDouble),
            "auto" => Ok(Precision::Auto),
            _ => Err(crate::Error::Parse(format!("unknown precision '{s}'"))),
        }
    }
}
