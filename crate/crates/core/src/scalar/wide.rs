use super::Scalar;
use crate::C64;
use std::ops::{Add, Mul, Neg, Sub};

/// Complex number `m · 2^e` with a normalised double mantissa and an
/// exponent stored as an integral `f64`.
///
/// Orbits of length-12 words from moderately large points reach moduli
/// around `10^180`, and escape-cascade distances fall to `e^(-10^9)` and
/// beyond. Neither fits a double; both fit here.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WideComplex {
    m: C64,
    e: f64,
}

const LN2: f64 = std::f64::consts::LN_2;

/// `2^k` for any integer `k`, saturating to 0 or infinity.
fn pow2(k: f64) -> f64 {
    if k > 1023.0 {
        return f64::INFINITY;
    }
    if k < -1074.0 {
        return 0.0;
    }
    let k = k as i32;
    if k >= -1022 {
        f64::from_bits(((k + 1023) as u64) << 52)
    } else {
        f64::from_bits(1u64 << 52) * f64::from_bits(((k + 1022 + 1023) as u64) << 52)
    }
}

/// Binary exponent of a positive finite double, so that `a / 2^k ∈ [1, 2)`.
fn exponent_of(a: f64) -> i32 {
    let bits = a.to_bits();
    let raw = ((bits >> 52) & 0x7ff) as i32;
    if raw == 0 {
        // subnormal: rescale first
        exponent_of(a * 2f64.powi(64)) - 64
    } else {
        raw - 1023
    }
}

impl WideComplex {
    pub fn new(m: C64, e: f64) -> Self {
        let a = m.re.abs().max(m.im.abs());
        if a == 0.0 || !a.is_finite() {
            return WideComplex { m, e: if a == 0.0 { 0.0 } else { e } };
        }
        let k = exponent_of(a);
        let scale = pow2(-k as f64);
        WideComplex { m: m * scale, e: e + k as f64 }
    }

    /// Mantissa with `max(|re|, |im|) ∈ [1, 2)` (or zero).
    pub fn mantissa(&self) -> C64 {
        self.m
    }

    /// Binary exponent.
    pub fn exponent(&self) -> f64 {
        self.e
    }

    pub fn is_zero(&self) -> bool {
        self.m.re == 0.0 && self.m.im == 0.0
    }

    /// `log10 |z|`.
    pub fn log10_abs(self) -> f64 {
        self.ln_abs() / std::f64::consts::LN_10
    }

    /// Quotient `self / other`.
    pub fn div(self, other: WideComplex) -> WideComplex {
        WideComplex::new(self.m / other.m, self.e - other.e)
    }
}

impl Add for WideComplex {
    type Output = WideComplex;
    fn add(self, b: Self) -> Self {
        if self.is_zero() {
            return b;
        }
        if b.is_zero() {
            return self;
        }
        let (big, small) = if self.e >= b.e { (self, b) } else { (b, self) };
        let d = big.e - small.e;
        if d > 1100.0 {
            return big;
        }
        WideComplex::new(big.m + small.m * pow2(-d), big.e)
    }
}

impl Neg for WideComplex {
    type Output = WideComplex;
    fn neg(self) -> Self {
        WideComplex { m: -self.m, e: self.e }
    }
}

impl Sub for WideComplex {
    type Output = WideComplex;
    fn sub(self, b: Self) -> Self {
        self + (-b)
    }
}

impl Mul for WideComplex {
    type Output = WideComplex;
    fn mul(self, b: Self) -> Self {
        if self.is_zero() || b.is_zero() {
            return WideComplex { m: C64::new(0.0, 0.0), e: 0.0 };
        }
        WideComplex::new(self.m * b.m, self.e + b.e)
    }
}

impl Scalar for WideComplex {
    fn from_c64(z: C64) -> Self {
        WideComplex::new(z, 0.0)
    }
    fn to_c64(self) -> C64 {
        if self.is_zero() {
            return self.m;
        }
        // split the scaling so intermediate factors stay representable
        let half = (self.e / 2.0).floor();
        self.m * pow2(half) * pow2(self.e - half)
    }
    fn ln_abs(self) -> f64 {
        if self.is_zero() {
            return f64::NEG_INFINITY;
        }
        self.m.norm().ln() + self.e * LN2
    }
    fn is_finite(self) -> bool {
        self.m.re.is_finite() && self.m.im.is_finite() && self.e.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(re: f64, im: f64) -> WideComplex {
        WideComplex::from_c64(C64::new(re, im))
    }

    #[test]
    fn round_trips_ordinary_values() {
        for z in [C64::new(3.5, -2.0), C64::new(1e-300, 0.0), C64::new(0.0, 7e200)] {
            let back = WideComplex::from_c64(z).to_c64();
            assert!((back - z).norm() <= 1e-15 * z.norm());
        }
    }

    #[test]
    fn arithmetic_matches_double_in_range() {
        let a = C64::new(1.25, -3.0);
        let b = C64::new(-0.5, 0.75);
        let (wa, wb) = (w(a.re, a.im), w(b.re, b.im));
        assert!(((wa * wb).to_c64() - a * b).norm() < 1e-14);
        assert!(((wa + wb).to_c64() - (a + b)).norm() < 1e-14);
        assert!(((wa - wb).to_c64() - (a - b)).norm() < 1e-14);
    }

    #[test]
    fn squaring_far_beyond_double_range() {
        let mut z = w(10.0, 0.0);
        for _ in 0..10 {
            z = z * z;
        }
        // 10^1024
        assert!((z.log10_abs() - 1024.0).abs() < 1e-9);
        assert!(!z.to_c64().re.is_finite());
    }

    #[test]
    fn tiny_addend_is_absorbed() {
        let big = WideComplex::new(C64::new(1.0, 0.0), 5000.0);
        let small = w(1.0, 0.0);
        assert_eq!(big + small, big);
    }

    #[test]
    fn cancellation_renormalises() {
        let a = w(1.0 + 2f64.powi(-50), 0.0);
        let b = w(1.0, 0.0);
        let d = a - b;
        assert_eq!(d.exponent(), -50.0);
        assert!((d.to_c64().re - 2f64.powi(-50)).abs() < 1e-30);
    }

    #[test]
    fn pow2_covers_subnormals() {
        assert_eq!(pow2(-1074.0), f64::from_bits(1));
        assert_eq!(pow2(-1030.0), 2f64.powi(-1000) * 2f64.powi(-30));
        assert_eq!(pow2(10.0), 1024.0);
    }
}
