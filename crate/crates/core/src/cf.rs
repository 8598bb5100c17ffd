//! The continued fraction `6G = 5 + 516/q(2) + p(3)/q(4) + p(5)/q(6) + …`.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::arith::{ser_rat, BigRat};
use crate::error::{Error, Result};
use crate::hyper::HpReal;
use crate::linear_forms::tilde_un_vn;

/// `p(n) = (5n²−20n+18)(n−2)(n−1)²n²(n+1)²(n+2)(5n²+20n+18)`,
/// `q(n) = 55n⁶−167n⁴+49n²−9`.
pub fn pq_eval(n: i64) -> (BigInt, BigInt) {
    let m = BigInt::from(n);
    let sq = |x: &BigInt| x * x;
    let p = (5 * sq(&m) - 20 * &m + 18)
        * (&m - 2)
        * sq(&(&m - 1))
        * sq(&m)
        * sq(&(&m + 1))
        * (&m + 2)
        * (5 * sq(&m) + 20 * &m + 18);
    let m2 = sq(&m);
    let q = ((55 * &m2 - 167) * &m2 + 49) * &m2 - 9;
    (p, q)
}

/// A continued fraction `b0 + a1/(b1 + a2/(b2 + …))`.
pub trait GeneralizedCf {
    fn head(&self) -> BigRat;
    /// `(a_k, b_k)` for `k ≥ 1`.
    fn level(&self, k: usize) -> (BigRat, BigRat);

    /// `N`-th convergent by backward evaluation.
    fn convergent(&self, n: usize) -> Result<BigRat> {
        let mut tail = BigRat::zero();
        for k in (1..=n).rev() {
            let (a, b) = self.level(k);
            let den = b + tail;
            if den.is_zero() {
                return Err(Error::Domain(format!("zero denominator at level {k}")));
            }
            tail = a / den;
        }
        Ok(self.head() + tail)
    }

    /// Convergents `0..=N` from the forward three-term recurrences.
    fn convergents_forward(&self, n: usize) -> Result<Vec<BigRat>> {
        let (mut p_prev, mut p) = (BigRat::from_integer(1.into()), self.head());
        let (mut q_prev, mut q) = (BigRat::zero(), BigRat::from_integer(1.into()));
        let mut out = vec![self.head()];
        for k in 1..=n {
            let (a, b) = self.level(k);
            let p_next = &b * &p + &a * &p_prev;
            let q_next = &b * &q + &a * &q_prev;
            if q_next.is_zero() {
                return Err(Error::Domain(format!("zero denominator at level {k}")));
            }
            out.push(&p_next / &q_next);
            (p_prev, p) = (p, p_next);
            (q_prev, q) = (q, q_next);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, Default)]
pub struct CFExpansion {
    /// Replaces `q(2k)` at the given levels; used for negative controls.
    overrides: Vec<(usize, BigInt)>,
}

impl CFExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_denominator(mut self, k: usize, q: BigInt) -> Self {
        self.overrides.push((k, q));
        self
    }
}

pub const FIRST_NUMERATOR: i64 = 516;

impl GeneralizedCf for CFExpansion {
    fn head(&self) -> BigRat {
        BigRat::from_integer(5.into())
    }

    fn level(&self, k: usize) -> (BigRat, BigRat) {
        let a = if k == 1 {
            BigInt::from(FIRST_NUMERATOR)
        } else {
            pq_eval(2 * k as i64 - 1).0
        };
        let b = match self.overrides.iter().find(|(j, _)| *j == k) {
            Some((_, q)) => q.clone(),
            None => pq_eval(2 * k as i64).1,
        };
        (BigRat::from_integer(a), BigRat::from_integer(b))
    }
}

pub fn convergent(n: usize) -> Result<BigRat> {
    CFExpansion::new().convergent(n)
}

#[derive(Clone, Debug, Serialize)]
pub struct CfRow {
    pub n: usize,
    #[serde(serialize_with = "ser_rat")]
    pub convergent: BigRat,
    pub matches_recursion: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CfRecursionReport {
    pub rows: Vec<CfRow>,
    pub first_failure: Option<usize>,
}

/// Compares `convergent(N)` with `6·ṽ_{N+1}/ũ_{N+1}` for `1 ≤ N ≤ n_max`.
pub fn cf_vs_recursion(cf: &impl GeneralizedCf, n_max: usize) -> Result<CfRecursionReport> {
    let convs = cf.convergents_forward(n_max)?;
    let six = BigRat::from_integer(6.into());
    let mut rows = Vec::with_capacity(n_max);
    for (n, c) in convs.into_iter().enumerate().skip(1) {
        let f = tilde_un_vn(n as u64 + 1)?;
        let matches_recursion = c == &six * &f.v / &f.u;
        rows.push(CfRow {
            n,
            convergent: c,
            matches_recursion,
        });
    }
    let first_failure = rows.iter().find(|r| !r.matches_recursion).map(|r| r.n);
    Ok(CfRecursionReport {
        rows,
        first_failure,
    })
}

/// Decimal digits to which `x` agrees with `reference`: `⌊−log₁₀|x − ref|⌋`,
/// clamped at 0.
pub fn agreeing_digits(x: &BigRat, reference: &HpReal) -> u32 {
    let diff = (x - reference.to_rat()).abs();
    if diff.is_zero() {
        return (reference.bits() as f64 * std::f64::consts::LOG10_2) as u32;
    }
    let d = -crate::arith::ln_abs_rat(&diff) / std::f64::consts::LN_10;
    d.floor().max(0.0) as u32
}

#[derive(Clone, Debug, Serialize)]
pub struct DigitsRow {
    pub n: usize,
    pub digits: u32,
    /// `2.09·N`, the rate implied by the characteristic roots.
    pub expected: f64,
    /// Sign of `convergent − 6G`.
    pub side: i8,
}

/// Correct digits of `convergent(N)` against `6·g` for each `N` in `range`.
pub fn digits_report(range: std::ops::RangeInclusive<usize>, g: &HpReal) -> Result<Vec<DigitsRow>> {
    let six_g = g.mul_int(&BigInt::from(6));
    let convs = CFExpansion::new().convergents_forward(*range.end())?;
    let rate = 2.0 * 11.0902f64.log10();
    Ok(range
        .map(|n| {
            let diff = &convs[n] - six_g.to_rat();
            DigitsRow {
                n,
                digits: agreeing_digits(&convs[n], &six_g),
                expected: rate * n as f64,
                side: if diff.is_zero() {
                    0
                } else if diff.is_positive() {
                    1
                } else {
                    -1
                },
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::hyper::catalan;

    #[test]
    fn polynomial_values() {
        assert_eq!(pq_eval(2).1, BigInt::from(1035));
        assert_eq!(pq_eval(3).0, BigInt::from(1_062_720));
        assert!(pq_eval(2).0.is_zero());
        assert!(pq_eval(1).0.is_zero());
    }

    #[test]
    fn first_convergents() {
        assert_eq!(convergent(0).unwrap(), int(5));
        assert_eq!(convergent(1).unwrap(), rat(1897, 345));
        let f = tilde_un_vn(2).unwrap();
        assert_eq!(int(6) * f.v / f.u, rat(1897, 345));
    }

    #[test]
    fn backward_equals_forward() {
        let cf = CFExpansion::new();
        let fwd = cf.convergents_forward(60).unwrap();
        for (n, c) in fwd.iter().enumerate() {
            assert_eq!(&cf.convergent(n).unwrap(), c, "N={n}");
        }
    }

    #[test]
    fn matches_recursion() {
        let r = cf_vs_recursion(&CFExpansion::new(), 50).unwrap();
        assert_eq!(r.first_failure, None);
        assert_eq!(r.rows.len(), 50);
    }

    #[test]
    fn perturbation_detected() {
        let cf = CFExpansion::new().with_denominator(2, pq_eval(4).1 + 1);
        assert_eq!(cf_vs_recursion(&cf, 5).unwrap().first_failure, Some(2));
    }

    #[test]
    fn digits_grow() {
        let g = catalan(400);
        let rows = digits_report(0..=20, &g).unwrap();
        assert!(rows[1].digits >= 2);
        assert!(rows[20].digits >= 35, "{}", rows[20].digits);
        // successive convergents alternate around 6G
        for w in rows[1..].windows(2) {
            assert_eq!(w[0].side, -w[1].side);
        }
    }
}
