//! Certified alternating sums `Σ_{k≥0} (-1)^k f(k)` of rational functions.
//!
//! Uses the Chebyshev weights of Cohen, Rodriguez Villegas and Zagier. Writing
//! `f(k) = ∫₀¹ x^k w(x) dx`, the weighted partial sum of `n` terms is off by at
//! most `∫|w| / T_n(3)`. For `f = Σ c_{j,s} (k + a_j)^-s` with every `a_j > 0`,
//! `∫|w| ≤ Σ |c_{j,s}| / a_j^s`, which is computed exactly from the partial
//! fractions of `f`.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use super::real::HpReal;
use super::series::{Method, SeriesValue};
use crate::arith::{pow_rat, BigRat, Poly};
use crate::error::{Error, Result};

/// `f(k) = scale · N(k) / Π_j (k + a_j)^{m_j}`.
#[derive(Clone, Debug)]
pub struct RationalSummand {
    scale: BigRat,
    numer: Poly,
    poles: Vec<(BigRat, u32)>,
}

impl RationalSummand {
    /// `numer_shifts` lists the `s` of the numerator factors `(k + s)`.
    pub fn new(scale: BigRat, numer_shifts: &[BigRat], poles: Vec<(BigRat, u32)>) -> Result<Self> {
        let factors: Vec<Poly> = numer_shifts
            .iter()
            .map(|s| Poly::linear(s.clone()))
            .collect();
        Self::from_poly(scale, Poly::product(factors.iter()), poles)
    }

    pub fn from_poly(scale: BigRat, numer: Poly, poles: Vec<(BigRat, u32)>) -> Result<Self> {
        for (i, (a, m)) in poles.iter().enumerate() {
            if !a.is_positive() || *m == 0 {
                return Err(Error::Domain(format!("pole shift {a} must be positive")));
            }
            if poles[..i].iter().any(|(b, _)| b == a) {
                return Err(Error::RepeatedPole(a.to_string()));
            }
        }
        let denom_degree: u32 = poles.iter().map(|(_, m)| m).sum();
        let numer_degree = numer.degree().unwrap_or(0);
        if !numer.is_zero() && numer_degree >= denom_degree as usize {
            return Err(Error::Domain(format!(
                "numerator degree {numer_degree} must be below denominator degree {denom_degree}"
            )));
        }
        Ok(RationalSummand {
            scale,
            numer,
            poles,
        })
    }

    pub fn eval(&self, k: u64) -> BigRat {
        let k = BigRat::from_integer(BigInt::from(k));
        let den: BigRat = self
            .poles
            .iter()
            .map(|(a, m)| pow_rat(&(&k + a), *m))
            .product();
        &self.scale * self.numer.eval(&k) / den
    }

    /// `c[j][s-1]`, the coefficient of `(k + a_j)^-s`.
    pub fn laurent(&self) -> Vec<Vec<BigRat>> {
        self.poles
            .iter()
            .enumerate()
            .map(|(j, (aj, mj))| {
                let order = *mj as usize;
                // g(h) = scale · N(h - a_j) · Π_{i≠j} (h + a_i - a_j)^{-m_i}, to O(h^order)
                let mut g: Vec<BigRat> = (0..order)
                    .map(|r| &self.scale * self.numer.taylor_shift(&-aj).coeff(r))
                    .collect();
                for (i, (ai, mi)) in self.poles.iter().enumerate() {
                    if i == j {
                        continue;
                    }
                    let d = ai - aj;
                    let inv_d = d.recip();
                    let series: Vec<BigRat> = (0..order)
                        .map(|r| {
                            let c = binomial(BigInt::from(*mi as usize + r - 1), BigInt::from(r));
                            let sign = if r % 2 == 0 { c } else { -c };
                            BigRat::from_integer(sign) * pow_rat(&inv_d, *mi + r as u32)
                        })
                        .collect();
                    g = (0..order)
                        .map(|r| (0..=r).map(|t| &g[t] * &series[r - t]).sum())
                        .collect();
                }
                // g_r multiplies h^{r - m_j}
                (1..=order).map(|s| g[order - s].clone()).collect()
            })
            .collect()
    }

    /// `Σ |c_{j,s}| / a_j^s`, the total mass of the representing density.
    pub fn variation_bound(&self) -> BigRat {
        self.laurent()
            .iter()
            .zip(&self.poles)
            .map(|(cs, (a, _))| {
                cs.iter()
                    .enumerate()
                    .map(|(s, c)| c.abs() / pow_rat(a, s as u32 + 1))
                    .sum::<BigRat>()
            })
            .sum()
    }

    /// `Σ_{k≥0} (-1)^k f(k)` with a rigorous error below `target`.
    pub fn alternating_sum(&self, bits: u32, target: &BigRat) -> Result<SeriesValue> {
        let w = self.variation_bound();
        let mut t_prev = BigInt::one();
        let mut t = BigInt::from(3);
        let mut n = 1usize;
        while BigRat::from_integer(t.clone()) * target <= w {
            let next = &t * 6 - &t_prev;
            t_prev = t;
            t = next;
            n += 1;
            if n > 1_000_000 {
                return Err(Error::PrecisionUnreachable(format!(
                    "alternating sum needs more than {n} terms"
                )));
            }
        }
        let d = BigRat::from_integer(t);
        let nn = BigRat::from_integer(BigInt::from(n));
        let half = BigRat::new(BigInt::one(), BigInt::from(2));
        let mut b = -BigRat::one();
        let mut c = -d.clone();
        let mut s = BigRat::zero();
        for k in 0..n {
            let kk = BigRat::from_integer(BigInt::from(k));
            c = &b - &c;
            s += &c * self.eval(k as u64);
            b = (&kk + &nn) * (&kk - &nn) * b / ((&kk + &half) * (&kk + BigRat::one()));
        }
        let value = s / &d;
        Ok(SeriesValue {
            value: HpReal::from_rat(&value, bits),
            error: w / d + HpReal::ulp(bits + 1),
            terms: n,
            method: Method::Certified,
        })
    }
}

static CATALAN_CACHE: Mutex<Option<HpReal>> = Mutex::new(None);

/// Catalan's constant `Σ (-1)^k/(2k+1)^2` with absolute error below `2^-bits`.
pub fn catalan(bits: u32) -> HpReal {
    let guard = CATALAN_CACHE.lock().map(|c| c.clone()).unwrap_or(None);
    if let Some(g) = guard {
        if g.bits() >= bits + 8 {
            return g.with_bits(bits);
        }
    }
    let work = bits + 16;
    let half = BigRat::new(BigInt::one(), BigInt::from(2));
    let f = RationalSummand::new(
        BigRat::new(BigInt::one(), BigInt::from(4)),
        &[],
        vec![(half, 2)],
    )
    .expect("valid summand");
    let g = f
        .alternating_sum(work, &HpReal::ulp(work))
        .expect("Catalan summand always converges")
        .value;
    if let Ok(mut cache) = CATALAN_CACHE.lock() {
        if cache.as_ref().is_none_or(|c| c.bits() < work) {
            *cache = Some(g.clone());
        }
    }
    g.with_bits(bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, parse_decimal, rat};

    pub const G_REF: &str = "0.9159655941772190150546035149323841107741493742816721342664981196217630197762547694793565129261151062485744226191961995790359";

    #[test]
    fn catalan_matches_reference_digits() {
        let g = catalan(400);
        let r = parse_decimal(G_REF).unwrap();
        assert!((g.to_rat() - r).abs() < rat(1, 10).pow(120));
    }

    #[test]
    fn laurent_of_catalan_summand() {
        let f = RationalSummand::new(rat(1, 4), &[], vec![(rat(1, 2), 2)]).unwrap();
        assert_eq!(f.laurent(), vec![vec![int(0), rat(1, 4)]]);
        assert_eq!(f.variation_bound(), int(1));
    }

    #[test]
    fn laurent_reconstructs_summand() {
        // (k + 3) / ((k + 1/2)^2 (k + 2))
        let f = RationalSummand::new(int(1), &[int(3)], vec![(rat(1, 2), 2), (int(2), 1)]).unwrap();
        let c = f.laurent();
        for k in 0..6u64 {
            let kk = int(k as i64);
            let mut v = BigRat::zero();
            for ((a, _), cs) in f.poles.iter().zip(&c) {
                for (s, cj) in cs.iter().enumerate() {
                    v += cj / pow_rat(&(&kk + a), s as u32 + 1);
                }
            }
            assert_eq!(v, f.eval(k));
        }
    }

    #[test]
    fn log_two_as_alternating_sum() {
        let f = RationalSummand::new(int(1), &[], vec![(int(1), 1)]).unwrap();
        let v = f.alternating_sum(200, &HpReal::ulp(180)).unwrap();
        let ln2 =
            parse_decimal("0.69314718055994530941723212145817656807550013436025525412068").unwrap();
        assert!((v.value.to_rat() - ln2).abs() < rat(1, 10).pow(54));
    }

    #[test]
    fn improper_summands_rejected() {
        assert!(RationalSummand::new(int(1), &[int(1)], vec![(int(1), 1)]).is_err());
        assert!(RationalSummand::new(int(1), &[], vec![(int(0), 1)]).is_err());
        assert!(matches!(
            RationalSummand::new(int(1), &[], vec![(int(1), 1), (int(1), 2)]),
            Err(Error::RepeatedPole(_))
        ));
    }
}
