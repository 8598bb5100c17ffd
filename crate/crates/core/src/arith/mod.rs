//! Exact integers, rationals and quarter-integers.
//!
//! Everything downstream is built on [`BigRat`]; [`QuarterInt`] keeps pole
//! locations and half-integral hypergeometric parameters in a type of their own
//! so that the `m ± 1/4` bookkeeping cannot silently degrade into general
//! rationals.

mod poly;

use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use poly::Poly;

/// Exact rational in lowest terms with a positive denominator.
pub type BigRat = BigRational;

pub fn rat(n: i64, d: i64) -> BigRat {
    BigRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRat {
    BigRat::from_integer(BigInt::from(n))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_rat(s: &str) -> Result<BigRat> {
    let s = s.trim();
    if s.contains('/') {
        BigRat::from_str(s).map_err(|_| Error::Domain(format!("bad rational `{s}`")))
    } else {
        BigInt::from_str(s)
            .map(BigRat::from_integer)
            .map_err(|_| Error::Domain(format!("bad rational `{s}`")))
    }
}

/// Parses a finite decimal such as `"-0.9159"` exactly.
pub fn parse_decimal(s: &str) -> Result<BigRat> {
    let s = s.trim();
    let bad = || Error::Domain(format!("bad decimal `{s}`"));
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (ip, fp) = body.split_once('.').unwrap_or((body, ""));
    let digits = format!("{ip}{fp}");
    let n = BigInt::from_str(&digits).map_err(|_| bad())?;
    let r = BigRat::new(n, BigInt::from(10u32).pow(fp.len() as u32));
    Ok(if neg { -r } else { r })
}

/// Serializes a rational as a `"p/q"` string (`"p"` for integers).
pub fn ser_rat<S: serde::Serializer>(r: &BigRat, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

pub fn ser_rat_vec<S: serde::Serializer>(
    v: &[BigRat],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|r| r.to_string()))
}

pub fn ser_rat_opt<S: serde::Serializer>(
    v: &Option<BigRat>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_some(&r.to_string()),
        None => s.serialize_none(),
    }
}

pub fn de_rat<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<BigRat, D::Error> {
    let s = String::deserialize(d)?;
    parse_rat(&s).map_err(serde::de::Error::custom)
}

/// The scalar `k/4` for an arbitrary integer `k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuarterInt(BigInt);

impl QuarterInt {
    pub fn from_quarters(q: impl Into<BigInt>) -> Self {
        QuarterInt(q.into())
    }

    pub fn from_halves(h: impl Into<BigInt>) -> Self {
        QuarterInt(h.into() * 2)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuarterInt(n.into() * 4)
    }

    /// Exact conversion; fails unless the denominator divides 4.
    pub fn try_from_rat(r: &BigRat) -> Result<Self> {
        let scaled = r * int(4);
        if scaled.is_integer() {
            Ok(QuarterInt(scaled.to_integer()))
        } else {
            Err(Error::Domain(format!("{r} is not a multiple of 1/4")))
        }
    }

    /// Four times the value.
    pub fn quarters(&self) -> &BigInt {
        &self.0
    }

    pub fn to_rat(&self) -> BigRat {
        BigRat::new(self.0.clone(), BigInt::from(4))
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_multiple_of(&BigInt::from(4))
    }

    /// Multiple of 1/2 (integers included).
    pub fn is_half_integral(&self) -> bool {
        self.0.is_even()
    }

    /// An element of `Z + 1/2`.
    pub fn is_half_odd(&self) -> bool {
        self.is_half_integral() && !self.is_integer()
    }

    /// An element of `Z ± 1/4`.
    pub fn is_odd_quarter(&self) -> bool {
        self.0.is_odd()
    }

    pub fn floor(&self) -> BigInt {
        self.0.div_floor(&BigInt::from(4))
    }

    pub fn is_positive(&self) -> bool {
        self.0.is_positive()
    }
}

impl fmt::Display for QuarterInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_rat())
    }
}

impl Add for &QuarterInt {
    type Output = QuarterInt;
    fn add(self, rhs: &QuarterInt) -> QuarterInt {
        QuarterInt(&self.0 + &rhs.0)
    }
}

impl Add for QuarterInt {
    type Output = QuarterInt;
    fn add(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt(self.0 + rhs.0)
    }
}

impl Sub for &QuarterInt {
    type Output = QuarterInt;
    fn sub(self, rhs: &QuarterInt) -> QuarterInt {
        QuarterInt(&self.0 - &rhs.0)
    }
}

impl Sub for QuarterInt {
    type Output = QuarterInt;
    fn sub(self, rhs: QuarterInt) -> QuarterInt {
        QuarterInt(self.0 - rhs.0)
    }
}

impl Neg for QuarterInt {
    type Output = QuarterInt;
    fn neg(self) -> QuarterInt {
        QuarterInt(-self.0)
    }
}

/// Signed 2-adic order of a nonzero rational.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Valuation(pub i64);

/// Number of trailing zero bits of a nonzero integer.
pub fn ord2_int(x: &BigInt) -> u64 {
    x.trailing_zeros().unwrap_or(0)
}

pub fn ord2(x: &BigRat) -> Result<Valuation> {
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let num = ord2_int(x.numer()) as i64;
    let den = ord2_int(x.denom()) as i64;
    Ok(Valuation(num - den))
}

/// `x` with every factor 2 removed (sign dropped).
pub fn odd_part(x: &BigInt) -> BigInt {
    if x.is_zero() {
        return BigInt::zero();
    }
    x.abs() >> ord2_int(x)
}

pub fn primes_upto(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut q = p * p;
        while q <= n {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

/// Exponent of each prime in `lcm(1, …, n)`: the largest `e` with `p^e ≤ n`.
pub fn lcm_prime_powers(n: u64) -> Vec<(u64, u32)> {
    primes_upto(n)
        .into_iter()
        .map(|p| {
            let mut e = 0;
            let mut pk = 1u64;
            while pk <= n / p {
                pk *= p;
                e += 1;
            }
            (p, e)
        })
        .collect()
}

/// `D_N = lcm(1, …, N)`, assembled from maximal prime powers.
pub fn lcm_upto(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::Domain("lcm_upto needs N ≥ 1".into()));
    }
    Ok(lcm_prime_powers(n)
        .into_iter()
        .fold(BigInt::one(), |acc, (p, e)| acc * BigInt::from(p).pow(e)))
}

/// `D_N` with the convention `D_N = 1` for `N ≤ 0` (empty lcm), as needed for
/// `D_{2n-1}` at `n = 0`.
pub fn lcm_upto_or_one(n: i64) -> BigInt {
    if n <= 0 {
        BigInt::one()
    } else {
        lcm_upto(n as u64).expect("n ≥ 1")
    }
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `⌈log₂ n⌉` for `n ≥ 1`, and 0 for `n = 0`.
pub fn ceil_log2(n: u64) -> u32 {
    if n <= 1 {
        0
    } else {
        64 - (n - 1).leading_zeros()
    }
}

/// `(t−1)(t−2)⋯(t−n)/n!` evaluated exactly.
pub fn int_poly_eval(n: u64, t: &QuarterInt) -> BigRat {
    // Work with 4t to keep the product integral.
    let four_t = t.quarters();
    let mut prod = BigInt::one();
    for j in 1..=n {
        prod *= four_t - BigInt::from(4 * j);
    }
    let den = factorial(n) * BigInt::from(4).pow(n as u32);
    BigRat::new(prod, den)
}

/// Natural log of `|x|` for a nonzero integer, accurate to f64 precision for
/// arbitrarily large `x`.
pub fn ln_abs_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        return x.abs().to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (x.abs() >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of `|x|` for a nonzero rational.
pub fn ln_abs_rat(x: &BigRat) -> f64 {
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

/// `n`-th power of a rational by repeated squaring.
pub fn pow_rat(x: &BigRat, n: u32) -> BigRat {
    num_traits::pow(x.clone(), n as usize)
}

/// Smallest odd prime factor of `x` found by trial division up to `limit`.
pub fn small_odd_prime_factor(x: &BigInt, limit: u64) -> Option<u64> {
    let x = x.abs();
    primes_upto(limit)
        .into_iter()
        .skip(1)
        .find(|&p| (&x % BigInt::from(p)).is_zero())
}

/// True when `x` is the square of a rational.
pub fn is_rational_square(x: &BigRat) -> bool {
    if x.is_negative() {
        return false;
    }
    let is_sq = |n: &BigInt| {
        let r = n.sqrt();
        &r * &r == *n
    };
    is_sq(x.numer()) && is_sq(x.denom())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute_lcm(n: u64) -> BigInt {
        (1..=n).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
    }

    #[test]
    fn lcm_small_values() {
        assert_eq!(lcm_upto(1).unwrap(), BigInt::from(1));
        assert_eq!(lcm_upto(6).unwrap(), BigInt::from(60));
        assert_eq!(lcm_upto(10).unwrap(), BigInt::from(2520));
        assert!(lcm_upto(0).is_err());
    }

    #[test]
    fn lcm_matches_brute_force_and_prime_power_cap() {
        for n in 1..=200u64 {
            let d = lcm_upto(n).unwrap();
            assert_eq!(d, brute_lcm(n), "N = {n}");
            for k in 1..=n {
                assert!((&d % BigInt::from(k)).is_zero());
            }
            for (p, e) in lcm_prime_powers(n) {
                // p^(e+1) exceeds n, so it must not divide D_n.
                assert!(p.pow(e) <= n && p.pow(e + 1) > n);
                assert!(!(&d % BigInt::from(p).pow(e + 1)).is_zero());
            }
        }
    }

    #[test]
    fn ord2_examples() {
        assert_eq!(ord2(&int(8)).unwrap(), Valuation(3));
        assert_eq!(ord2(&rat(115, 2)).unwrap(), Valuation(-1));
        let d10 = BigRat::from_integer(lcm_upto(10).unwrap());
        assert_eq!(ord2(&d10).unwrap(), Valuation(3));
        assert!(matches!(ord2(&int(0)), Err(Error::ZeroValuation)));
    }

    #[test]
    fn ord2_of_lcm_is_floor_log2() {
        for n in 1..=300u64 {
            let d = BigRat::from_integer(lcm_upto(n).unwrap());
            assert_eq!(ord2(&d).unwrap().0, 63 - n.leading_zeros() as i64);
        }
    }

    #[test]
    fn int_poly_examples() {
        assert_eq!(int_poly_eval(0, &QuarterInt::from_quarters(17)), int(1));
        assert_eq!(int_poly_eval(1, &QuarterInt::from_quarters(3)), rat(-1, 4));
        assert_eq!(int_poly_eval(2, &QuarterInt::from_quarters(7)), rat(-3, 32));
    }

    #[test]
    fn int_poly_vanishes_on_its_roots() {
        for n in 1..=12u64 {
            for t in 1..=n {
                assert!(int_poly_eval(n, &QuarterInt::from_int(t)).is_zero());
            }
        }
    }

    #[test]
    fn int_poly_is_integer_valued() {
        for n in 0..=10u64 {
            for t in -10i64..=20 {
                assert!(int_poly_eval(n, &QuarterInt::from_int(t)).is_integer());
            }
        }
    }

    #[test]
    fn quarter_int_classification() {
        let q = QuarterInt::from_quarters(5);
        assert!(q.is_odd_quarter() && !q.is_half_integral());
        assert_eq!(q.floor(), BigInt::from(1));
        assert_eq!(QuarterInt::from_quarters(-1).floor(), BigInt::from(-1));
        assert!(QuarterInt::from_halves(3).is_half_odd());
        assert!(QuarterInt::from_int(3).is_integer());
        assert_eq!(
            QuarterInt::try_from_rat(&rat(3, 4)).unwrap(),
            QuarterInt::from_quarters(3)
        );
        assert!(QuarterInt::try_from_rat(&rat(1, 3)).is_err());
        let sum = &QuarterInt::from_quarters(3) + &QuarterInt::from_halves(1);
        assert_eq!(sum.to_rat(), rat(5, 4));
    }

    #[test]
    fn ceil_log2_values() {
        assert_eq!(ceil_log2(0), 0);
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(3), 2);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(600), 10);
    }

    #[test]
    fn ln_of_huge_integers() {
        let x = BigInt::from(3).pow(2000);
        let expected = 2000.0 * 3f64.ln();
        assert!((ln_abs_int(&x) - expected).abs() < 1e-9 * expected);
    }

    #[test]
    fn parse_rationals() {
        assert_eq!(parse_rat("115/2").unwrap(), rat(115, 2));
        assert_eq!(parse_rat(" -7 ").unwrap(), int(-7));
        assert!(parse_rat("x").is_err());
    }

    proptest! {
        #[test]
        fn ord2_is_multiplicative(a in 1i64..1_000_000, b in 1i64..1_000_000,
                                  c in 1i64..1_000_000, d in 1i64..1_000_000) {
            let x = rat(a, b);
            let y = rat(-c, d);
            let lhs = ord2(&(&x * &y)).unwrap().0;
            prop_assert_eq!(lhs, ord2(&x).unwrap().0 + ord2(&y).unwrap().0);
        }
    }
}
