use super::Scalar;
use crate::C64;
use std::ops::{Add, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| ≤ ulp(hi)/2`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdReal {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DdReal {
    pub const ZERO: DdReal = DdReal { hi: 0.0, lo: 0.0 };

    pub fn new(x: f64) -> Self {
        DdReal { hi: x, lo: 0.0 }
    }

    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }
}

impl Add for DdReal {
    type Output = DdReal;
    #[inline]
    fn add(self, b: DdReal) -> DdReal {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DdReal { hi, lo }
    }
}

impl Neg for DdReal {
    type Output = DdReal;
    #[inline]
    fn neg(self) -> DdReal {
        DdReal { hi: -self.hi, lo: -self.lo }
    }
}

impl Sub for DdReal {
    type Output = DdReal;
    #[inline]
    fn sub(self, b: DdReal) -> DdReal {
        self + (-b)
    }
}

impl Mul for DdReal {
    type Output = DdReal;
    #[inline]
    fn mul(self, b: DdReal) -> DdReal {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DdReal { hi, lo }
    }
}

/// Complex number with double-double real and imaginary parts.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DdComplex {
    pub re: DdReal,
    pub im: DdReal,
}

impl Add for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn add(self, b: Self) -> Self {
        DdComplex { re: self.re + b.re, im: self.im + b.im }
    }
}

impl Sub for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn sub(self, b: Self) -> Self {
        DdComplex { re: self.re - b.re, im: self.im - b.im }
    }
}

impl Neg for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn neg(self) -> Self {
        DdComplex { re: -self.re, im: -self.im }
    }
}

impl Mul for DdComplex {
    type Output = DdComplex;
    #[inline]
    fn mul(self, b: Self) -> Self {
        DdComplex {
            re: self.re * b.re - self.im * b.im,
            im: self.re * b.im + self.im * b.re,
        }
    }
}

impl Scalar for DdComplex {
    #[inline]
    fn from_c64(z: C64) -> Self {
        DdComplex { re: DdReal::new(z.re), im: DdReal::new(z.im) }
    }
    #[inline]
    fn to_c64(self) -> C64 {
        C64::new(self.re.to_f64(), self.im.to_f64())
    }
    fn ln_abs(self) -> f64 {
        self.to_c64().norm().ln()
    }
    fn is_finite(self) -> bool {
        self.re.hi.is_finite() && self.im.hi.is_finite()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_rounding_error_of_sum() {
        let a = DdReal::new(1.0);
        let b = DdReal::new(1e-20);
        let s = a + b - a;
        assert_eq!(s.to_f64(), 1e-20);
    }

    #[test]
    fn product_keeps_low_order_bits() {
        // (1 + 2^-40)^2 = 1 + 2^-39 + 2^-80
        let x = DdReal::new(1.0 + 2f64.powi(-40));
        let sq = x * x - DdReal::new(1.0 + 2f64.powi(-39));
        assert_eq!(sq.to_f64(), 2f64.powi(-80));
    }

    #[test]
    fn complex_product_matches_double() {
        let a = C64::new(1.5, -0.25);
        let b = C64::new(-0.75, 2.0);
        let p = (DdComplex::from_c64(a) * DdComplex::from_c64(b)).to_c64();
        assert!((p - a * b).norm() < 1e-15);
    }

    #[test]
    fn cancellation_below_double_resolution() {
        let x = DdComplex::from_c64(C64::new(3.0, 0.0));
        let tiny = DdComplex::from_c64(C64::new(1e-25, -1e-27));
        let d = (x + tiny) * (x + tiny) - x * x;
        let expect = C64::new(6e-25, -6e-27);
        assert!((d.to_c64() - expect).norm() < 1e-38);
    }
}
