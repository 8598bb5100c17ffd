//! Binary fixed-point reals.
//!
//! An [`HpReal`] is the dyadic rational `mantissa / 2^bits`. Every operation
//! rounds to nearest at the working precision, so a result carries an absolute
//! error of at most half an ulp per operation on top of its inputs' errors.
//! Callers that need rigorous enclosures add guard bits and track bounds
//! explicitly.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith::{ln_abs_int, BigRat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HpReal {
    mant: BigInt,
    bits: u32,
}

/// Rounded `n / d` for `d > 0` (ties away from zero).
fn div_round(n: &BigInt, d: &BigInt) -> BigInt {
    debug_assert!(d.is_positive());
    let (q, r) = n.div_mod_floor(d);
    if (r << 1u32) >= *d {
        q + 1
    } else {
        q
    }
}

fn shr_round(n: &BigInt, s: u32) -> BigInt {
    if s == 0 {
        return n.clone();
    }
    div_round(n, &(BigInt::one() << s))
}

impl HpReal {
    pub fn zero(bits: u32) -> Self {
        HpReal {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn one(bits: u32) -> Self {
        HpReal {
            mant: BigInt::one() << bits,
            bits,
        }
    }

    pub fn from_int(n: &BigInt, bits: u32) -> Self {
        HpReal {
            mant: n << bits,
            bits,
        }
    }

    pub fn from_i64(n: i64, bits: u32) -> Self {
        HpReal::from_int(&BigInt::from(n), bits)
    }

    pub fn from_rat(r: &BigRat, bits: u32) -> Self {
        HpReal {
            mant: div_round(&(r.numer() << bits), r.denom()),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    /// Exact value as a rational.
    pub fn to_rat(&self) -> BigRat {
        BigRat::new(self.mant.clone(), BigInt::one() << self.bits)
    }

    /// One unit in the last place, `2^-bits`.
    pub fn ulp(bits: u32) -> BigRat {
        BigRat::new(BigInt::one(), BigInt::one() << bits)
    }

    /// `2^-k` as a rational.
    pub fn pow2_neg(k: u32) -> BigRat {
        HpReal::ulp(k)
    }

    pub fn with_bits(&self, bits: u32) -> Self {
        let mant = match bits.cmp(&self.bits) {
            Ordering::Equal => self.mant.clone(),
            Ordering::Greater => &self.mant << (bits - self.bits),
            Ordering::Less => shr_round(&self.mant, self.bits - bits),
        };
        HpReal { mant, bits }
    }

    fn aligned(&self, other: &HpReal) -> (BigInt, BigInt, u32) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits).mant, other.with_bits(bits).mant, bits)
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn abs(&self) -> Self {
        HpReal {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn mul_rat(&self, r: &BigRat) -> Self {
        HpReal {
            mant: div_round(&(&self.mant * r.numer()), r.denom()),
            bits: self.bits,
        }
    }

    pub fn mul_int(&self, n: &BigInt) -> Self {
        HpReal {
            mant: &self.mant * n,
            bits: self.bits,
        }
    }

    /// Quotient rounded at the larger of the two precisions. Panics on division
    /// by zero, like integer division.
    pub fn div(&self, other: &HpReal) -> Self {
        let (a, b, bits) = self.aligned(other);
        assert!(!b.is_zero(), "HpReal division by zero");
        let (num, den) = if b.is_negative() {
            (-(a << bits), -b)
        } else {
            (a << bits, b)
        };
        HpReal {
            mant: div_round(&num, &den),
            bits,
        }
    }

    /// Square root; panics for negative input.
    pub fn sqrt(&self) -> Self {
        assert!(!self.is_negative(), "square root of a negative HpReal");
        // sqrt(m / 2^b) = sqrt(m · 2^b) / 2^b; one extra bit for rounding.
        let scaled: BigInt = &self.mant << (self.bits + 2);
        let r = scaled.sqrt();
        HpReal {
            mant: shr_round(&r, 1),
            bits: self.bits,
        }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = HpReal::one(self.bits);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn floor(&self) -> BigInt {
        self.mant.div_floor(&(BigInt::one() << self.bits))
    }

    pub fn to_f64(&self) -> f64 {
        let l = self.ln_abs();
        if l == f64::NEG_INFINITY {
            return 0.0;
        }
        let m = l.exp();
        if self.is_negative() {
            -m
        } else {
            m
        }
    }

    /// `ln |x|` in double precision; `-inf` for zero.
    pub fn ln_abs(&self) -> f64 {
        if self.mant.is_zero() {
            return f64::NEG_INFINITY;
        }
        ln_abs_int(&self.mant) - self.bits as f64 * std::f64::consts::LN_2
    }

    /// `|x| < tol`.
    pub fn abs_below(&self, tol: &BigRat) -> bool {
        self.to_rat().abs() < *tol
    }

    /// Decimal expansion truncated (not rounded) to `digits` places.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scale = BigInt::from(10u32).pow(digits as u32);
        let scaled = (&self.mant.abs() * &scale) >> self.bits;
        let s = scaled.to_str_radix(10);
        let s = if s.len() <= digits {
            format!("{}{}", "0".repeat(digits + 1 - s.len()), s)
        } else {
            s
        };
        let (ip, fp) = s.split_at(s.len() - digits);
        let sign = if self.mant.sign() == Sign::Minus {
            "-"
        } else {
            ""
        };
        if digits == 0 {
            format!("{sign}{ip}")
        } else {
            format!("{sign}{ip}.{fp}")
        }
    }

    /// `atan(1/x)` for an integer `x ≥ 2`, by its alternating Taylor series.
    fn atan_inv(x: u64, bits: u32) -> HpReal {
        let work = bits + 32;
        let x2 = BigInt::from(x) * x;
        let mut power = (BigInt::one() << work) / x; // 1/x^(2k+1), fixed point
        let mut sum = BigInt::zero();
        let mut k = 0u64;
        while !power.is_zero() {
            let term = &power / (2 * k + 1);
            if k % 2 == 0 {
                sum += term;
            } else {
                sum -= term;
            }
            power /= &x2;
            k += 1;
        }
        HpReal {
            mant: sum,
            bits: work,
        }
        .with_bits(bits)
    }

    /// π by Machin's formula.
    pub fn pi(bits: u32) -> HpReal {
        let work = bits + 16;
        let a = HpReal::atan_inv(5, work).mul_int(&BigInt::from(16));
        let b = HpReal::atan_inv(239, work).mul_int(&BigInt::from(4));
        (&a - &b).with_bits(bits)
    }

    pub fn sqrt_pi(bits: u32) -> HpReal {
        HpReal::pi(bits + 8).sqrt().with_bits(bits)
    }

    /// `(√π)^k` for a signed exponent.
    pub fn sqrt_pi_pow(k: i32, bits: u32) -> HpReal {
        let work = bits + 16 + 4 * k.unsigned_abs();
        let base = HpReal::sqrt_pi(work);
        let p = base.powi(k.unsigned_abs());
        if k >= 0 {
            p.with_bits(bits)
        } else {
            HpReal::one(work).div(&p).with_bits(bits)
        }
    }
}

impl Add for &HpReal {
    type Output = HpReal;
    fn add(self, rhs: &HpReal) -> HpReal {
        let (a, b, bits) = self.aligned(rhs);
        HpReal { mant: a + b, bits }
    }
}

impl Sub for &HpReal {
    type Output = HpReal;
    fn sub(self, rhs: &HpReal) -> HpReal {
        let (a, b, bits) = self.aligned(rhs);
        HpReal { mant: a - b, bits }
    }
}

impl Mul for &HpReal {
    type Output = HpReal;
    fn mul(self, rhs: &HpReal) -> HpReal {
        let (a, b, bits) = self.aligned(rhs);
        HpReal {
            mant: shr_round(&(a * b), bits),
            bits,
        }
    }
}

impl Add for HpReal {
    type Output = HpReal;
    fn add(self, rhs: HpReal) -> HpReal {
        &self + &rhs
    }
}

impl Sub for HpReal {
    type Output = HpReal;
    fn sub(self, rhs: HpReal) -> HpReal {
        &self - &rhs
    }
}

impl Mul for HpReal {
    type Output = HpReal;
    fn mul(self, rhs: HpReal) -> HpReal {
        &self * &rhs
    }
}

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal {
            mant: -self.mant,
            bits: self.bits,
        }
    }
}

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        let (a, b, _) = self.aligned(other);
        Some(a.cmp(&b))
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.bits as f64) * 0.30103) as usize);
        write!(f, "{}", self.to_decimal(digits))
    }
}

/// Compact scientific rendering for residuals and error bounds.
pub fn sci(x: &BigRat) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    let l = crate::arith::ln_abs_rat(x) / std::f64::consts::LN_10;
    let e = l.floor();
    let m = 10f64.powf(l - e);
    let sign = if x.is_negative() { "-" } else { "" };
    format!("{sign}{m:.3}e{}", e as i64)
}

pub fn f64_of(x: &BigRat) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let l = crate::arith::ln_abs_rat(x).exp();
        if x.is_negative() {
            -l
        } else {
            l
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    const PI_50: &str = "3.14159265358979323846264338327950288419716939937510";

    #[test]
    fn pi_digits() {
        assert_eq!(HpReal::pi(200).to_decimal(50), PI_50);
    }

    #[test]
    fn sqrt_and_square() {
        let two = HpReal::from_i64(2, 256);
        let r = two.sqrt();
        let back = &r * &r;
        assert!((&back - &two).abs_below(&HpReal::ulp(250)));
        assert_eq!(r.to_decimal(20), "1.41421356237309504880");
    }

    #[test]
    fn rational_round_trip() {
        let x = HpReal::from_rat(&rat(-1897, 345), 128);
        let err = (x.to_rat() - rat(-1897, 345)).abs();
        assert!(err <= HpReal::ulp(129));
        assert_eq!(x.to_decimal(4), "-5.4985");
    }

    #[test]
    fn division_and_ordering() {
        let a = HpReal::from_i64(1, 100);
        let b = HpReal::from_i64(-3, 100);
        let q = a.div(&b);
        assert!(q < HpReal::zero(100));
        assert!((q.to_rat() + rat(1, 3)).abs() <= HpReal::ulp(100));
    }

    #[test]
    fn floor_of_negative() {
        let x = HpReal::from_rat(&rat(-7, 2), 64);
        assert_eq!(x.floor(), BigInt::from(-4));
    }

    #[test]
    fn sqrt_pi_powers() {
        let p = HpReal::sqrt_pi_pow(2, 128);
        let pi = HpReal::pi(128);
        assert!((&p - &pi).abs_below(&HpReal::ulp(120)));
        let inv = HpReal::sqrt_pi_pow(-2, 128);
        assert!((&(&inv * &pi) - &HpReal::one(128)).abs_below(&HpReal::ulp(118)));
    }

    #[test]
    fn scientific_rendering() {
        assert_eq!(sci(&rat(1, 1000)), "1.000e-3");
        assert_eq!(sci(&rat(-25, 1)), "-2.500e1");
    }
}
