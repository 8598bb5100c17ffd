use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::BigRat;

/// Dense univariate polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRat>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<BigRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRat::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigRat) -> Self {
        Poly::new(vec![c])
    }

    /// The monic linear factor `x + a`.
    pub fn linear(a: BigRat) -> Self {
        Poly::new(vec![a, BigRat::one()])
    }

    pub fn product<'a>(factors: impl IntoIterator<Item = &'a Poly>) -> Poly {
        factors
            .into_iter()
            .fold(Poly::constant(BigRat::one()), |acc, f| acc.mul(f))
    }

    pub fn coeffs(&self) -> &[BigRat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigRat {
        self.coeffs.last().cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn coeff(&self, k: usize) -> BigRat {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRat::zero)
    }

    pub fn eval(&self, x: &BigRat) -> BigRat {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRat::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, n: i64) -> BigRat {
        self.eval(&BigRat::from_integer(BigInt::from(n)))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..len).map(|k| self.coeff(k) - other.coeff(k)).collect())
    }

    pub fn scale(&self, c: &BigRat) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    /// `p(x + s)` via repeated synthetic division.
    pub fn taylor_shift(&self, s: &BigRat) -> Poly {
        let mut c = self.coeffs.clone();
        let n = c.len();
        for i in 0..n {
            for j in (i..n - 1).rev() {
                let t = &c[j + 1] * s;
                c[j] += t;
            }
        }
        Poly::new(c)
    }

    /// Sufficient test for `p(x) ≥ 0` on `[s, ∞)`: all coefficients of `p(x + s)`
    /// are nonnegative.
    pub fn nonnegative_from(&self, s: &BigRat) -> bool {
        self.taylor_shift(s).coeffs.iter().all(|c| !c.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Only even powers of `x` carry nonzero coefficients.
    pub fn is_even(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| k % 2 == 0 || c.is_zero())
    }

    /// `q(y) = p(y/2)`, i.e. the same polynomial written in the variable `2x`.
    pub fn in_doubled_variable(&self) -> Poly {
        let half = BigRat::new(BigInt::one(), BigInt::from(2));
        let mut pow = BigRat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &pow);
            pow *= &half;
        }
        Poly::new(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
            let a = c.abs();
            match k {
                0 => write!(f, "{a}")?,
                1 => write!(f, "{a}·n")?,
                _ => write!(f, "{a}·n^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn eval_and_mul() {
        let p = Poly::from_ints(&[1, 1]); // 1 + x
        let q = p.mul(&p);
        assert_eq!(q, Poly::from_ints(&[1, 2, 1]));
        assert_eq!(q.eval(&rat(1, 2)), rat(9, 4));
        assert_eq!(Poly::zero().degree(), None);
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let p = Poly::from_ints(&[-9, 0, 196, 0, -2672, 0, 3520]);
        let s = rat(7, 3);
        let shifted = p.taylor_shift(&s);
        for x in -3..4 {
            let x = int(x);
            assert_eq!(shifted.eval(&x), p.eval(&(&x + &s)));
        }
    }

    #[test]
    fn positivity_certificate() {
        // (x - 3)^2 + 1 has negative coefficients at 0 but is positive from 3 on
        let p = Poly::from_ints(&[10, -6, 1]);
        assert!(!p.nonnegative_from(&int(0)));
        assert!(p.nonnegative_from(&int(3)));
    }

    #[test]
    fn doubled_variable() {
        // 4x^2 + 2x + 1 = y^2 + y + 1 with y = 2x
        let p = Poly::from_ints(&[1, 2, 4]);
        assert_eq!(p.in_doubled_variable(), Poly::from_ints(&[1, 1, 1]));
    }
}
