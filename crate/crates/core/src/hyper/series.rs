//! Generalized hypergeometric series `pFq(upper; lower | z)` at `z = ±1`.
//!
//! Two evaluation paths share one term generator:
//!
//! * [`Hypergeometric::sum_certified`] sums directly and stops once a rigorous
//!   tail bound falls below the target. The bound comes from a polynomial
//!   inequality on the term ratio that is verified exactly (Taylor-shift
//!   positivity) from an explicit index onwards.
//! * [`Hypergeometric::sum_extrapolated`] applies the Levin u-transform to the
//!   first hundred-odd exact terms. It is fast and accurate on the
//!   polynomially convergent series met here, but its error figure is only an
//!   estimate, so results carry [`Method::Extrapolated`].

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::real::HpReal;
use crate::arith::{BigRat, Poly};
use crate::error::{Error, Result};

/// Default number of terms the certified path may consume.
pub const DEFAULT_TERM_BUDGET: usize = 2_000_000;

/// Largest Levin order tried by the extrapolated path.
pub const LEVIN_MAX_ORDER: usize = 120;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Argument {
    One,
    MinusOne,
}

impl Argument {
    pub fn from_i64(z: i64) -> Result<Self> {
        match z {
            1 => Ok(Argument::One),
            -1 => Ok(Argument::MinusOne),
            _ => Err(Error::Domain(format!("z = {z}; only ±1 is supported"))),
        }
    }

    fn as_rat(self) -> BigRat {
        match self {
            Argument::One => BigRat::one(),
            Argument::MinusOne => -BigRat::one(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Finite sum, exact up to the final rounding.
    Terminating,
    /// Direct summation with a rigorous tail bound.
    Certified,
    /// Levin u-transform; the error figure is a convergence estimate.
    Extrapolated,
}

#[derive(Clone, Debug)]
pub struct SeriesValue {
    pub value: HpReal,
    /// Rigorous bound for `Terminating`/`Certified`, estimate for `Extrapolated`.
    pub error: BigRat,
    pub terms: usize,
    pub method: Method,
}

impl SeriesValue {
    pub fn is_certified(&self) -> bool {
        self.method != Method::Extrapolated
    }

    /// Multiplies value and error by a rational.
    pub fn scaled(&self, r: &BigRat) -> SeriesValue {
        SeriesValue {
            value: self.value.mul_rat(r),
            error: &self.error * r.abs() + HpReal::ulp(self.value.bits()),
            terms: self.terms,
            method: self.method,
        }
    }
}

/// How the tail beyond the current index is bounded.
#[derive(Clone, Debug)]
enum TailRule {
    /// Alternating with nonincreasing magnitudes: tail ≤ |t_K|.
    Leibniz,
    /// Ratio ≤ 1 − σ/(k+1) with σ > 1: tail ≤ K·|t_K|/(σ − 1).
    Raabe(BigRat),
    /// Ratio magnitude ≤ 1/2: tail ≤ 2|t_K|.
    Geometric,
}

#[derive(Clone, Debug)]
pub struct Hypergeometric {
    upper: Vec<BigRat>,
    lower: Vec<BigRat>,
    z: Argument,
}

fn is_nonpositive_integer(x: &BigRat) -> bool {
    x.is_integer() && !x.is_positive()
}

impl Hypergeometric {
    pub fn new(upper: Vec<BigRat>, lower: Vec<BigRat>, z: Argument) -> Result<Self> {
        if let Some(b) = lower.iter().find(|b| is_nonpositive_integer(b)) {
            return Err(Error::Domain(format!(
                "lower parameter {b} is a nonpositive integer"
            )));
        }
        let hg = Hypergeometric { upper, lower, z };
        if hg.terminating_len().is_none() {
            hg.check_convergence()?;
        }
        Ok(hg)
    }

    pub fn upper(&self) -> &[BigRat] {
        &self.upper
    }

    pub fn lower(&self) -> &[BigRat] {
        &self.lower
    }

    /// `Σ lower − Σ upper`; at `z = ±1` the terms decay like `k^-(s+1)`.
    pub fn excess(&self) -> BigRat {
        self.lower.iter().sum::<BigRat>() - self.upper.iter().sum::<BigRat>()
    }

    /// Number of nonzero terms when an upper parameter is a nonpositive integer.
    pub fn terminating_len(&self) -> Option<usize> {
        self.upper
            .iter()
            .filter(|a| is_nonpositive_integer(a))
            .filter_map(|a| (-a.to_integer()).to_usize())
            .min()
            .map(|n| n + 1)
    }

    fn check_convergence(&self) -> Result<()> {
        let (p, q) = (self.upper.len(), self.lower.len());
        if p > q + 1 {
            return Err(Error::Divergent(format!(
                "{p}F{q} has zero radius of convergence"
            )));
        }
        if p == q + 1 {
            let s = self.excess();
            let ok = match self.z {
                Argument::One => s.is_positive(),
                Argument::MinusOne => s > -BigRat::one(),
            };
            if !ok {
                return Err(Error::Divergent(format!(
                    "parameter excess {s} is too small at z = {}",
                    self.z.as_rat()
                )));
            }
        }
        Ok(())
    }

    /// Exact ratio `t_{k+1}/t_k`.
    pub fn ratio(&self, k: usize) -> BigRat {
        let k = BigRat::from_integer(BigInt::from(k));
        let num: BigRat = self.upper.iter().map(|a| a + &k).product();
        let den: BigRat =
            self.lower.iter().map(|b| b + &k).product::<BigRat>() * (&k + BigRat::one());
        num / den * self.z.as_rat()
    }

    /// The first `count` terms, exactly.
    pub fn exact_terms(&self, count: usize) -> Vec<BigRat> {
        let mut out = Vec::with_capacity(count);
        let mut t = BigRat::one();
        for k in 0..count {
            out.push(t.clone());
            t *= self.ratio(k);
        }
        out
    }

    fn tail_rule(&self) -> TailRule {
        let (p, q) = (self.upper.len(), self.lower.len());
        match (p == q + 1, self.z) {
            (true, Argument::MinusOne) => TailRule::Leibniz,
            (true, Argument::One) => {
                let two = BigRat::from_integer(BigInt::from(2));
                TailRule::Raabe(BigRat::one() + self.excess() / two)
            }
            (false, _) => TailRule::Geometric,
        }
    }

    /// Smallest index tried such that the tail rule holds for every `k ≥ K`.
    fn certification_start(&self, rule: &TailRule, budget: usize) -> Result<usize> {
        let lin = |c: &BigRat| Poly::linear(c.clone());
        let num = Poly::product(self.upper.iter().map(lin).collect::<Vec<_>>().iter());
        let den = Poly::product(self.lower.iter().map(lin).collect::<Vec<_>>().iter());
        let one = BigRat::one();
        let q = match rule {
            TailRule::Leibniz => den.mul(&Poly::linear(one)).sub(&num),
            TailRule::Raabe(sigma) => den.mul(&Poly::linear(&one - sigma)).sub(&num),
            TailRule::Geometric => den
                .mul(&Poly::linear(one))
                .sub(&num.scale(&BigRat::from_integer(BigInt::from(2)))),
        };
        // All factors must be positive from the start index on.
        let mut floor = BigRat::zero();
        for c in self.upper.iter().chain(&self.lower) {
            floor = floor.max(-c);
        }
        if let TailRule::Raabe(sigma) = rule {
            floor = floor.max(sigma - BigRat::one());
        }
        let mut k = floor
            .floor()
            .to_integer()
            .to_usize()
            .unwrap_or(usize::MAX)
            .saturating_add(1);
        while k <= budget {
            if q.nonnegative_from(&BigRat::from_integer(BigInt::from(k))) {
                return Ok(k);
            }
            k = 2 * k + 1;
        }
        Err(Error::BudgetExceeded {
            budget,
            achieved: f64::INFINITY,
        })
    }

    fn tail_bound(rule: &TailRule, k: usize, abs_tk: &BigRat) -> BigRat {
        match rule {
            TailRule::Leibniz => abs_tk.clone(),
            TailRule::Raabe(sigma) => {
                abs_tk * BigRat::from_integer(BigInt::from(k)) / (sigma - BigRat::one())
            }
            TailRule::Geometric => abs_tk * BigRat::from_integer(BigInt::from(2)),
        }
    }

    /// Direct summation until the rigorous error bound drops below `target`.
    pub fn sum_certified(&self, bits: u32, target: &BigRat, budget: usize) -> Result<SeriesValue> {
        if let Some(len) = self.terminating_len() {
            if len <= budget {
                let sum: BigRat = self.exact_terms(len).into_iter().sum();
                return Ok(SeriesValue {
                    value: HpReal::from_rat(&sum, bits),
                    error: HpReal::ulp(bits + 1),
                    terms: len,
                    method: Method::Terminating,
                });
            }
        }
        let rule = self.tail_rule();
        let start = self.certification_start(&rule, budget)?;
        let work = bits + 64;
        let ulp_work = HpReal::ulp(work);

        // Rounding error of the running term, in units of 2^-work.
        let mut term_err = 0f64;
        let mut sum_err = 0f64;
        let mut t = HpReal::one(work);
        let mut sum = HpReal::zero(work);
        let mut k = 0usize;
        loop {
            if k >= start {
                let abs_tk =
                    t.to_rat().abs() + &ulp_work * BigRat::from_float(term_err.ceil()).unwrap();
                let tail = Self::tail_bound(&rule, k, &abs_tk);
                let rounding = &ulp_work * BigRat::from_float(sum_err.ceil()).unwrap();
                let total = tail + rounding + HpReal::ulp(bits + 1);
                if total < *target {
                    return Ok(SeriesValue {
                        value: sum.with_bits(bits),
                        error: total,
                        terms: k,
                        method: Method::Certified,
                    });
                }
                if k >= budget {
                    return Err(Error::BudgetExceeded {
                        budget,
                        achieved: super::real::f64_of(&total),
                    });
                }
            }
            sum = &sum + &t;
            sum_err += term_err;
            let r = self.ratio(k);
            let r_abs = r.abs().to_f64().unwrap_or(f64::MAX) * (1.0 + 1e-12);
            t = t.mul_rat(&r);
            term_err = term_err * r_abs + 0.5;
            k += 1;
        }
    }

    /// Levin u-transform of the partial sums, trying orders 10, 20, … and
    /// keeping the order whose change from the previous one is smallest.
    pub fn sum_extrapolated(&self, bits: u32) -> Result<SeriesValue> {
        if self.terminating_len().is_some() {
            return self.sum_certified(bits, &HpReal::ulp(bits), DEFAULT_TERM_BUDGET);
        }
        let n0 = 1usize;
        let m_max = LEVIN_MAX_ORDER;
        let work = bits + 3 * m_max as u32 + 64;
        let terms = self.exact_terms(n0 + m_max + 1);
        if terms.iter().any(Zero::is_zero) {
            return Err(Error::Domain(
                "vanishing term in a nonterminating series".into(),
            ));
        }
        let mut partial = Vec::with_capacity(terms.len());
        let mut s = HpReal::zero(work);
        for t in &terms {
            s = &s + &HpReal::from_rat(t, work);
            partial.push(s.clone());
        }
        // q_k = ω_{n0}/ω_k with ω_k = (1 + k) t_k; the common scale cancels in L_m.
        let omega = |k: usize| &terms[k] * BigRat::from_integer(BigInt::from(k + 1));
        let omega0 = omega(n0);
        let q: Vec<HpReal> = (0..terms.len())
            .map(|k| {
                if k < n0 {
                    HpReal::zero(work)
                } else {
                    HpReal::from_rat(&(&omega0 / omega(k)), work)
                }
            })
            .collect();

        let levin = |m: usize| -> Option<HpReal> {
            let mut num = HpReal::zero(work);
            let mut den = HpReal::zero(work);
            let base = BigInt::from(n0 + 1 + m);
            for j in 0..=m {
                let k = n0 + j;
                let c = binomial(BigInt::from(m), BigInt::from(j))
                    * BigInt::from(k + 1).pow(m as u32 - 1);
                let w = BigRat::new(if j % 2 == 0 { c } else { -c }, base.pow(m as u32 - 1));
                let wq = q[k].mul_rat(&w);
                num = &num + &(&wq * &partial[k]);
                den = &den + &wq;
            }
            (!den.is_zero()).then(|| num.div(&den))
        };

        let mut prev: Option<HpReal> = None;
        let mut best: Option<(HpReal, BigRat, usize)> = None;
        for m in (10..=m_max).step_by(10) {
            let Some(l) = levin(m) else { continue };
            if let Some(p) = &prev {
                let diff = (&l - p).to_rat().abs();
                if best.as_ref().is_none_or(|(_, e, _)| diff < *e) {
                    best = Some((l.clone(), diff, n0 + m + 1));
                }
            }
            prev = Some(l);
        }
        let (value, err, terms_used) =
            best.ok_or_else(|| Error::PrecisionUnreachable("Levin transform degenerate".into()))?;
        Ok(SeriesValue {
            value: value.with_bits(bits),
            error: err + HpReal::ulp(bits),
            terms: terms_used,
            method: Method::Extrapolated,
        })
    }
}

/// Certified `pFq(upper; lower | z)` with target error `2^-(bits/2)`.
pub fn pfq_truncated(upper: &[BigRat], lower: &[BigRat], z: i64, bits: u32) -> Result<SeriesValue> {
    let hg = Hypergeometric::new(upper.to_vec(), lower.to_vec(), Argument::from_i64(z)?)?;
    hg.sum_certified(bits, &HpReal::ulp(bits / 2), DEFAULT_TERM_BUDGET)
}

/// Uncertified, extrapolated `pFq(upper; lower | z)`.
pub fn pfq_extrapolated(
    upper: &[BigRat],
    lower: &[BigRat],
    z: i64,
    bits: u32,
) -> Result<SeriesValue> {
    let hg = Hypergeometric::new(upper.to_vec(), lower.to_vec(), Argument::from_i64(z)?)?;
    hg.sum_extrapolated(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    const LN2: &str = "0.69314718055994530941723212145817656807550013436025525412068";
    const INV_E: &str = "0.36787944117144232159552377016146086744581113103176783450783";

    fn close(x: &HpReal, reference: &str, tol: &BigRat) -> bool {
        let r = crate::arith::parse_decimal(reference).unwrap();
        (x.to_rat() - r).abs() < *tol
    }

    #[test]
    fn log_two_certified() {
        let tol = rat(1, 100_000);
        let hg =
            Hypergeometric::new(vec![int(1), int(1)], vec![int(2)], Argument::MinusOne).unwrap();
        let v = hg.sum_certified(64, &tol, DEFAULT_TERM_BUDGET).unwrap();
        assert_eq!(v.method, Method::Certified);
        assert!(v.error < tol);
        assert!(close(&v.value, LN2, &v.error));
    }

    #[test]
    fn log_two_extrapolated() {
        let v = pfq_extrapolated(&[int(1), int(1)], &[int(2)], -1, 256).unwrap();
        assert_eq!(v.method, Method::Extrapolated);
        assert!(close(&v.value, LN2, &rat(1, 10i64.pow(18)).pow(2)));
    }

    #[test]
    fn exponential_of_minus_one() {
        let v = pfq_truncated(&[], &[], -1, 128).unwrap();
        assert!(v.error < HpReal::ulp(64));
        assert!(close(&v.value, INV_E, &v.error));
    }

    #[test]
    fn terminating_series_is_exact() {
        // 2F1(-3, 1; 1 | 1) = (1 - 1)^3 = 0
        let v = pfq_truncated(&[int(-3), int(1)], &[int(1)], 1, 64).unwrap();
        assert_eq!(v.method, Method::Terminating);
        assert!(v.value.is_zero());
    }

    #[test]
    fn raabe_tail_bound_brackets_value() {
        // 2F1(1, 1; 3 | 1) = Σ 2/((k+1)(k+2)) = 2
        let tol = rat(1, 1000);
        let hg = Hypergeometric::new(vec![int(1), int(1)], vec![int(3)], Argument::One).unwrap();
        let v = hg.sum_certified(64, &tol, DEFAULT_TERM_BUDGET).unwrap();
        let partial = v.value.to_rat();
        assert!(partial <= int(2) && int(2) <= &partial + &v.error);
    }

    #[test]
    fn divergent_ranges_rejected() {
        assert!(matches!(
            Hypergeometric::new(vec![int(1), int(1)], vec![int(2)], Argument::One),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            Hypergeometric::new(
                vec![int(1), int(1), int(1)],
                vec![int(2)],
                Argument::MinusOne
            ),
            Err(Error::Divergent(_))
        ));
        assert!(matches!(
            Hypergeometric::new(vec![int(1)], vec![int(-2)], Argument::One),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn budget_exhaustion_is_explicit() {
        let hg =
            Hypergeometric::new(vec![int(1), int(1)], vec![int(2)], Argument::MinusOne).unwrap();
        let err = hg.sum_certified(128, &HpReal::ulp(100), 1000).unwrap_err();
        assert!(err.is_precision_failure());
    }

    #[test]
    fn certified_and_extrapolated_agree() {
        // A 3F2(1) of the kind that appears in the integral H(c).
        let hg = Hypergeometric::new(
            vec![int(1), rat(1, 2), int(1)],
            vec![rat(5, 2), rat(5, 2)],
            Argument::One,
        )
        .unwrap();
        let tol = rat(1, 10_000);
        let c = hg.sum_certified(64, &tol, DEFAULT_TERM_BUDGET).unwrap();
        let e = hg.sum_extrapolated(256).unwrap();
        assert!((c.value.to_rat() - e.value.to_rat()).abs() < c.error);
    }
}
