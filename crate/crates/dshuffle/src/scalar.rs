//! Ground-ring scalars: exact rationals and fixed-point big floats.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use std::fmt;

/// Exact rational scalar.
pub type Q = BigRational;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Coefficient ring used by series code. Division is only ever by small integers.
pub trait Coeff: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn div_i64(&self, n: i64) -> Self;
    /// Absolute value as a double, for residual reporting.
    fn magnitude(&self) -> f64;
    fn render(&self) -> String;
}

impl Coeff for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        qi(n)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn div_i64(&self, n: i64) -> Self {
        self / qi(n)
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64().unwrap_or(f64::INFINITY)
    }
    fn render(&self) -> String {
        self.to_string()
    }
}

/// Fixed-point binary number `m / 2^bits`.
///
/// Integers are stored with `bits = 0` and are exact; mixed operations align
/// to the larger precision. Every rounding step truncates toward negative
/// infinity and loses at most one unit in the last place.
#[derive(Clone, Debug)]
pub struct BigFloat {
    m: BigInt,
    bits: u32,
}

impl BigFloat {
    pub fn from_int(n: i64, bits: u32) -> Self {
        BigFloat { m: BigInt::from(n) << bits, bits }
    }

    pub fn from_mantissa(m: BigInt, bits: u32) -> Self {
        BigFloat { m, bits }
    }

    pub fn from_q(x: &Q, bits: u32) -> Self {
        let m = (x.numer() << bits) / x.denom();
        BigFloat { m, bits }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn mantissa(&self) -> &BigInt {
        &self.m
    }

    /// Re-express at `bits` fractional bits (truncating if lowering).
    pub fn with_bits(&self, bits: u32) -> Self {
        let m = if bits >= self.bits {
            &self.m << (bits - self.bits)
        } else {
            &self.m >> (self.bits - bits)
        };
        BigFloat { m, bits }
    }

    fn align(&self, o: &Self) -> (BigInt, BigInt, u32) {
        let b = self.bits.max(o.bits);
        (
            &self.m << (b - self.bits),
            &o.m << (b - o.bits),
            b,
        )
    }

    pub fn abs(&self) -> Self {
        BigFloat { m: self.m.abs(), bits: self.bits }
    }

    pub fn div(&self, o: &Self) -> Self {
        let b = self.bits.max(o.bits);
        let num = &self.m << (o.bits + b);
        let den = &o.m << self.bits;
        BigFloat { m: num::Integer::div_floor(&num, &den), bits: b }
    }

    pub fn to_f64(&self) -> f64 {
        let shift = self.m.bits().saturating_sub(60) as u32;
        let top = (&self.m >> shift).to_f64().unwrap_or(f64::NAN);
        top * 2f64.powi(shift as i32 - self.bits as i32)
    }

    /// Decimal rendering with `digits` digits after the point (truncated).
    pub fn to_decimal(&self, digits: usize) -> String {
        let neg = self.m.is_negative();
        let a = self.m.abs();
        let int = &a >> self.bits;
        let frac = &a - (&int << self.bits);
        let scale = BigInt::from(10).pow(digits as u32);
        let f = (frac * scale) >> self.bits;
        let fs = f.to_string();
        let pad = "0".repeat(digits.saturating_sub(fs.len()));
        format!("{}{}.{}{}", if neg { "-" } else { "" }, int, pad, fs)
    }
}

impl PartialEq for BigFloat {
    fn eq(&self, o: &Self) -> bool {
        let (a, b, _) = self.align(o);
        a == b
    }
}

impl Coeff for BigFloat {
    fn zero() -> Self {
        BigFloat { m: BigInt::zero(), bits: 0 }
    }
    fn one() -> Self {
        BigFloat { m: BigInt::one(), bits: 0 }
    }
    fn from_i64(n: i64) -> Self {
        BigFloat { m: BigInt::from(n), bits: 0 }
    }
    fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b, bits) = self.align(o);
        BigFloat { m: a + b, bits }
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b, bits) = self.align(o);
        BigFloat { m: a - b, bits }
    }
    fn mul(&self, o: &Self) -> Self {
        let bits = self.bits.max(o.bits);
        let drop = self.bits + o.bits - bits;
        BigFloat { m: (&self.m * &o.m) >> drop, bits }
    }
    fn neg(&self) -> Self {
        BigFloat { m: -&self.m, bits: self.bits }
    }
    fn div_i64(&self, n: i64) -> Self {
        // floor division keeps the one-ulp rounding contract
        let d = BigInt::from(n);
        if self.bits == 0 {
            assert!(
                num::Integer::is_multiple_of(&self.m, &d),
                "inexact division of an exact integer BigFloat; attach a precision first"
            );
        }
        BigFloat { m: num::Integer::div_floor(&self.m, &d), bits: self.bits }
    }
    fn magnitude(&self) -> f64 {
        self.abs().to_f64()
    }
    fn render(&self) -> String {
        self.to_decimal(30)
    }
}

impl fmt::Display for BigFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_decimal(30))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_basics() {
        assert_eq!(Coeff::add(&q(1, 2), &q(1, 3)), q(5, 6));
        assert_eq!(q(3, 4).div_i64(3), q(1, 4));
    }

    #[test]
    fn bigfloat_mul_and_div() {
        let a = BigFloat::from_q(&q(1, 3), 100);
        let b = BigFloat::from_int(3, 100);
        let p = a.mul(&b);
        assert!((p.to_f64() - 1.0).abs() < 1e-25);
        let h = BigFloat::from_int(1, 64).div_i64(7);
        assert!((h.to_f64() - 1.0 / 7.0).abs() < 1e-15);
        let d = BigFloat::from_int(1, 80).div(&BigFloat::from_int(8, 80));
        assert_eq!(d.to_f64(), 0.125);
    }

    #[test]
    fn decimal_rendering() {
        let x = BigFloat::from_q(&q(-5, 4), 40);
        assert_eq!(x.to_decimal(3), "-1.250");
    }
}
