//! Second-order recurrences `c2(n)·x_{n+1} − c1(n)·x_n − c0(n)·x_{n−1} = 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{
    ceil_log2, is_rational_square, lcm_upto_or_one, ln_abs_rat, odd_part, ord2_int,
    small_odd_prime_factor, BigRat, Poly,
};
use crate::error::{Error, Result};
use crate::hyper::HpReal;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Order2Rec {
    pub c2: Poly,
    pub c1: Poly,
    pub c0: Poly,
    /// First `n` used by [`Order2Rec::iterate`].
    pub valid_from: i64,
}

impl Order2Rec {
    pub fn new(c2: Poly, c1: Poly, c0: Poly, valid_from: i64) -> Self {
        Order2Rec {
            c2,
            c1,
            c0,
            valid_from,
        }
    }

    /// `x_{n+1} = a·x_n + b·x_{n−1}`.
    pub fn constant(a: i64, b: i64) -> Self {
        Order2Rec::new(
            Poly::from_ints(&[1]),
            Poly::from_ints(&[a]),
            Poly::from_ints(&[b]),
            1,
        )
    }

    /// `c2·x_{n+1} − c1·x_n − c0·x_{n−1}` at index `n`.
    pub fn defect(&self, n: i64, prev: &BigRat, cur: &BigRat, next: &BigRat) -> BigRat {
        self.c2.eval_int(n) * next - self.c1.eval_int(n) * cur - self.c0.eval_int(n) * prev
    }

    /// `x_0, …, x_N` from `x_0, x_1`, stepping `n = valid_from, …`.
    pub fn iterate(&self, x0: BigRat, x1: BigRat, n_max: usize) -> Result<Vec<BigRat>> {
        let mut xs = vec![x0, x1];
        let mut n = self.valid_from;
        while xs.len() <= n_max {
            let c2 = self.c2.eval_int(n);
            if c2.is_zero() {
                return Err(Error::LeadingCoefficientVanishes(n));
            }
            let k = xs.len();
            let next = (self.c1.eval_int(n) * &xs[k - 1] + self.c0.eval_int(n) * &xs[k - 2]) / c2;
            xs.push(next);
            n += 1;
        }
        xs.truncate(n_max + 1);
        Ok(xs)
    }

    /// First index `n` (with `seq[n]` the middle term) where the identity fails.
    /// `seq[i]` is taken to be `x_{valid_from − 1 + i}`.
    pub fn first_violation(&self, seq: &[BigRat]) -> Option<i64> {
        seq.windows(3).enumerate().find_map(|(i, w)| {
            let n = self.valid_from + i as i64;
            (!self.defect(n, &w[0], &w[1], &w[2]).is_zero()).then_some(n)
        })
    }

    pub fn check_solution(&self, seq: &[BigRat]) -> SolutionCheck {
        match self.first_violation(seq) {
            None => SolutionCheck {
                holds: true,
                first_failure: None,
            },
            Some(n) => SolutionCheck {
                holds: false,
                first_failure: Some(n),
            },
        }
    }

    /// Limits `a0 = lim −c1/c2`, `b0 = lim −c0/c2` of the normalized form
    /// `x_{n+1} + a(n)·x_n + b(n)·x_{n−1} = 0`.
    pub fn limits(&self) -> Result<(BigRat, BigRat)> {
        let d = self
            .c2
            .degree()
            .ok_or_else(|| Error::Domain("zero leading polynomial".into()))?;
        let lim = |p: &Poly| -> Result<BigRat> {
            match p.degree() {
                Some(k) if k > d => Err(Error::Domain(format!(
                    "coefficient of degree {k} outgrows c2"
                ))),
                Some(k) if k == d => Ok(-(p.leading() / self.c2.leading())),
                _ => Ok(BigRat::zero()),
            }
        };
        Ok((lim(&self.c1)?, lim(&self.c0)?))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolutionCheck {
    pub holds: bool,
    pub first_failure: Option<i64>,
}

/// The recursion satisfied by `ũ_n` and `ṽ_n`.
pub fn catalan_recursion() -> Order2Rec {
    let p = Poly::from_ints;
    let two_n = p(&[0, 2]);
    let two_n1 = p(&[1, 2]);
    let c2 = Poly::product([&two_n, &two_n, &two_n1, &two_n1, &p(&[3, -20, 20])]);
    let c1 = p(&[-9, 0, 196, 0, -2672, 0, 3520]);
    let c0 = Poly::product([&two_n, &two_n, &two_n1, &p(&[-3, 2]), &p(&[3, 20, 20])]);
    Order2Rec::new(c2, c1, c0, 1)
}

#[derive(Clone, Debug)]
pub struct CharRoots {
    pub a0: BigRat,
    pub b0: BigRat,
    pub root_larger: HpReal,
    pub root_smaller: HpReal,
    /// `|λ₁| = |λ₂|`: the Perron dichotomy does not apply.
    pub equal_modulus: bool,
}

impl CharRoots {
    pub fn discriminant(&self) -> BigRat {
        &self.a0 * &self.a0 - BigRat::from_integer(BigInt::from(4)) * &self.b0
    }

    /// Exact sum of the roots, `−a0`.
    pub fn root_sum(&self) -> BigRat {
        -self.a0.clone()
    }

    /// Exact product of the roots, `b0`.
    pub fn root_product(&self) -> BigRat {
        self.b0.clone()
    }

    pub fn roots_rational(&self) -> bool {
        is_rational_square(&self.discriminant())
    }
}

/// Roots of `λ² + a0·λ + b0` for the limiting coefficients of `rec`.
pub fn char_roots(rec: &Order2Rec, bits: u32) -> Result<CharRoots> {
    let (a0, b0) = rec.limits()?;
    let disc = &a0 * &a0 - BigRat::from_integer(BigInt::from(4)) * &b0;
    if disc.is_negative() {
        return Err(Error::Domain(format!(
            "characteristic polynomial λ² + ({a0})λ + ({b0}) has complex roots"
        )));
    }
    let work = bits + 16;
    let s = HpReal::from_rat(&disc, work).sqrt();
    let m = HpReal::from_rat(&(-&a0), work);
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    let r1 = (&m + &s).mul_rat(&half);
    let r2 = (&m - &s).mul_rat(&half);
    let (root_larger, root_smaller) = if r1.abs() >= r2.abs() {
        (r1, r2)
    } else {
        (r2, r1)
    };
    Ok(CharRoots {
        equal_modulus: disc.is_zero() || a0.is_zero(),
        a0,
        b0,
        root_larger: root_larger.with_bits(bits),
        root_smaller: root_smaller.with_bits(bits),
    })
}

/// Sign and logarithmic size, for exact and high-precision values alike.
pub trait Magnitude {
    fn ln_abs(&self) -> f64;
    fn signum(&self) -> i8;
}

impl Magnitude for BigRat {
    fn ln_abs(&self) -> f64 {
        if self.is_zero() {
            f64::NEG_INFINITY
        } else {
            ln_abs_rat(self)
        }
    }
    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }
}

impl Magnitude for HpReal {
    fn ln_abs(&self) -> f64 {
        HpReal::ln_abs(self)
    }
    fn signum(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_negative() {
            -1
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    /// `|x_n|^(1/n)`.
    pub nth_root: f64,
    /// `x_{n+1}/x_n`, absent at the last index.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthReport {
    pub rows: Vec<GrowthRow>,
    /// `((1+√5)/2)^5`.
    pub target_larger: f64,
    /// `((√5−1)/2)^5`.
    pub target_smaller: f64,
}

impl GrowthReport {
    pub fn at(&self, n: usize) -> Option<&GrowthRow> {
        self.rows.iter().find(|r| r.n == n)
    }
}

/// `|x_n|^(1/n)` and `x_{n+1}/x_n` for every `n ≥ 1` with `x_n ≠ 0`, computed
/// from exact logarithms so that large values never overflow.
pub fn growth_diagnostics<T: Magnitude>(seq: &[T]) -> GrowthReport {
    let phi5 = ((1.0 + 5f64.sqrt()) / 2.0).powi(5);
    let rows = (1..seq.len())
        .filter(|&n| seq[n].signum() != 0)
        .map(|n| {
            let l = seq[n].ln_abs();
            let ratio = seq.get(n + 1).filter(|x| x.signum() != 0).map(|x| {
                let s = f64::from(x.signum() * seq[n].signum());
                s * (x.ln_abs() - l).exp()
            });
            GrowthRow {
                n,
                nth_root: (l / n as f64).exp(),
                ratio,
            }
        })
        .collect();
    GrowthReport {
        rows,
        target_larger: phi5,
        target_smaller: 1.0 / phi5,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SeqKind {
    /// The denominator of `x_n` itself.
    U,
    /// The denominator of `D_{2n−1}² · x_n`.
    V,
}

#[derive(Clone, Debug, Serialize)]
pub struct IntegralityRow {
    pub n: usize,
    pub kind: SeqKind,
    /// `ord₂` of the denominator.
    pub exponent: u64,
    /// `4n + ⌈log₂ 2n⌉ + slack`.
    pub bound: u64,
    /// `exponent ≤ 4n`.
    pub strong: bool,
    #[serde(serialize_with = "ser_big")]
    pub odd_part: BigInt,
    pub witness_prime: Option<u64>,
    pub pass: bool,
}

fn ser_big<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// Default slack above `4n + ⌈log₂ 2n⌉`.
pub const DEFAULT_SLACK: u32 = 8;

/// Power-of-two denominator certificate for `seq[n]`, `n = 0..len`.
pub fn integrality_certificate(seq: &[BigRat], kind: SeqKind, slack: u32) -> Vec<IntegralityRow> {
    seq.iter()
        .enumerate()
        .map(|(n, x)| integrality_row(n, x, kind, slack))
        .collect()
}

pub fn integrality_row(n: usize, x: &BigRat, kind: SeqKind, slack: u32) -> IntegralityRow {
    let scaled = match kind {
        SeqKind::U => x.clone(),
        SeqKind::V => {
            let d = lcm_upto_or_one(2 * n as i64 - 1);
            x * BigRat::from_integer(&d * &d)
        }
    };
    let den = scaled.denom();
    let exponent = ord2_int(den);
    let odd = odd_part(den);
    let bound = 4 * n as u64 + ceil_log2(2 * n as u64) as u64 + slack as u64;
    let witness_prime = if odd.is_one() {
        None
    } else {
        small_odd_prime_factor(&odd, 100_000)
    };
    IntegralityRow {
        n,
        kind,
        exponent,
        bound,
        strong: exponent <= 4 * n as u64,
        pass: odd.is_one() && exponent <= bound,
        odd_part: odd,
        witness_prime,
    }
}

/// Bits needed to resolve `ũ_n·G − ṽ_n` to relative accuracy `2^-64` given
/// `|ũ_n| ≈ λ^n` and `|r̃_n| ≈ λ^-n` with `λ ≈ 11.09`.
pub fn remainder_bits(n: usize) -> u32 {
    (n as f64 * 2.0 * 11.0902f64.log2())
        .ceil()
        .to_u32()
        .unwrap_or(u32::MAX / 2)
        + 128
}
