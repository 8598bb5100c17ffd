use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::LinearFormQG;
use crate::arith::{BigRat, QuarterInt};
use crate::error::{Error, Result};

/// `Σ_p coeff_p / (t − p)` with distinct simple poles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartialFractionForm {
    pub terms: Vec<PfTerm>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PfTerm {
    #[serde(serialize_with = "ser_quarter")]
    pub pole: QuarterInt,
    #[serde(serialize_with = "crate::arith::ser_rat")]
    pub coeff: BigRat,
}

fn ser_quarter<S: serde::Serializer>(q: &QuarterInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl PartialFractionForm {
    pub fn coefficient_sum(&self) -> BigRat {
        self.terms.iter().map(|t| &t.coeff).sum()
    }

    pub fn eval(&self, t: &BigRat) -> BigRat {
        self.terms
            .iter()
            .map(|x| &x.coeff / (t - x.pole.to_rat()))
            .sum()
    }
}

/// Partial fractions of `scale · Π(t − r) / Π(t − q)` over simple poles `q`.
///
/// Roots are handled in quarter units so the products run over small
/// integers: the coefficient at `P/4` is
/// `scale · 4^(deg D − 1 − deg N) · Π(P − R) / Π_{Q≠P}(P − Q)`.
pub fn decompose(
    numer_roots: &[QuarterInt],
    denom_roots: &[QuarterInt],
    scale: &BigRat,
) -> Result<PartialFractionForm> {
    for (i, q) in denom_roots.iter().enumerate() {
        if denom_roots[..i].contains(q) {
            return Err(Error::RepeatedPole(q.to_string()));
        }
    }
    if numer_roots.len() + 2 > denom_roots.len() {
        return Err(Error::DegreeCondition {
            numer: numer_roots.len(),
            denom: denom_roots.len(),
        });
    }
    let shift = 2 * (denom_roots.len() - 1 - numer_roots.len());
    let power = BigRat::from_integer(BigInt::one() << shift);
    let terms = denom_roots
        .iter()
        .map(|p| {
            let pq = p.quarters();
            let num: BigInt = numer_roots.iter().map(|r| pq - r.quarters()).product();
            let den: BigInt = denom_roots
                .iter()
                .filter(|q| *q != p)
                .map(|q| pq - q.quarters())
                .product();
            PfTerm {
                pole: p.clone(),
                coeff: scale * &power * BigRat::new(num, den),
            }
        })
        .collect();
    Ok(PartialFractionForm { terms })
}

/// Prefix sums `Σ 1/j²` over odd `j ≤ m` with `j ≡ m (mod 4)`.
struct OddSquarePrefix {
    sums: Vec<BigRat>,
}

impl OddSquarePrefix {
    fn new(upto: usize) -> Self {
        let mut sums = vec![BigRat::zero(); upto + 1];
        for m in (1..=upto).step_by(2) {
            let prev = if m > 4 {
                sums[m - 4].clone()
            } else {
                BigRat::zero()
            };
            sums[m] = prev + BigRat::new(BigInt::one(), BigInt::from(m * m));
        }
        OddSquarePrefix { sums }
    }

    fn get(&self, m: i64) -> BigRat {
        if m < 1 {
            BigRat::zero()
        } else {
            self.sums[m as usize].clone()
        }
    }
}

/// Collapses `Σ_{ν≥1} Σ_p c_p (ν − p)^-2` into `u·G − v`.
///
/// With `q = 4p` odd, `(ν − p)^-2 = 16/(4ν − q)^2` and `j = 4ν − q` runs over
/// `j ≡ −q (mod 4)` from `4 − q` upwards. That is `σ₁` or `σ₃` (odd squares
/// in the classes 1 and 3 mod 4) plus finitely many rational corrections.
/// Because `Σ c_p = 0`, the `σ` parts combine to `(Σ_{class 1} c_p)(σ₁ − σ₃)`.
pub fn tails_to_form(pf: &PartialFractionForm) -> Result<LinearFormQG> {
    let total = pf.coefficient_sum();
    if !total.is_zero() {
        return Err(Error::NonzeroCoefficientSum(total));
    }
    let mut quarters = Vec::with_capacity(pf.terms.len());
    for t in &pf.terms {
        if !t.pole.is_odd_quarter() {
            return Err(Error::PoleNotQuarter(t.pole.to_string()));
        }
        let q = t
            .pole
            .quarters()
            .to_i64()
            .ok_or_else(|| Error::Domain(format!("pole {} too large", t.pole)))?;
        quarters.push(q);
    }
    let reach = quarters
        .iter()
        .map(|q| (4 - q).unsigned_abs() as usize)
        .max()
        .unwrap_or(0);
    let prefix = OddSquarePrefix::new(reach + 4);
    let mut s1 = BigRat::zero();
    let mut corr = BigRat::zero();
    for (t, &q) in pf.terms.iter().zip(&quarters) {
        let start = 4 - q;
        if (-q).rem_euclid(4) == 1 {
            s1 += &t.coeff;
        }
        let k = if start >= 1 {
            -prefix.get(start - 4)
        } else {
            prefix.get(-start)
        };
        corr += &t.coeff * k;
    }
    let sixteen = BigRat::from_integer(BigInt::from(16));
    Ok(LinearFormQG::new(&sixteen * s1, -(sixteen * corr)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn q(n: i64) -> QuarterInt {
        QuarterInt::from_quarters(n)
    }

    #[test]
    fn r0_decomposition() {
        let pf = decompose(&[], &[q(3), q(1)], &rat(1, 32)).unwrap();
        assert_eq!(
            pf.terms[0],
            PfTerm {
                pole: q(3),
                coeff: rat(1, 16)
            }
        );
        assert_eq!(
            pf.terms[1],
            PfTerm {
                pole: q(1),
                coeff: rat(-1, 16)
            }
        );
        let f = tails_to_form(&pf).unwrap();
        assert_eq!((f.u.clone(), f.v.clone()), (int(1), int(0)));
    }

    #[test]
    fn decomposition_matches_function() {
        // scale (t − 1)(t − 2) / ((t − 3/4)(t − 1/4)(t + 1/4)(t + 3/4))
        let num = [QuarterInt::from_int(1), QuarterInt::from_int(2)];
        let den = [q(3), q(1), q(-1), q(-3)];
        let scale = rat(5, 7);
        let pf = decompose(&num, &den, &scale).unwrap();
        for t in [int(3), rat(1, 3), int(-5)] {
            let direct = &scale * (&t - int(1)) * (&t - int(2))
                / den.iter().map(|d| &t - d.to_rat()).product::<BigRat>();
            assert_eq!(pf.eval(&t), direct);
        }
    }

    #[test]
    fn contract_violations() {
        assert!(matches!(
            decompose(&[QuarterInt::from_int(1)], &[q(3), q(1)], &int(1)),
            Err(Error::DegreeCondition { .. })
        ));
        assert!(matches!(
            decompose(&[], &[q(3), q(3), q(1)], &int(1)),
            Err(Error::RepeatedPole(_))
        ));
        let unbalanced = PartialFractionForm {
            terms: vec![PfTerm {
                pole: q(1),
                coeff: int(1),
            }],
        };
        assert!(matches!(
            tails_to_form(&unbalanced),
            Err(Error::NonzeroCoefficientSum(_))
        ));
        let half = PartialFractionForm {
            terms: vec![
                PfTerm {
                    pole: q(2),
                    coeff: int(1),
                },
                PfTerm {
                    pole: q(1),
                    coeff: int(-1),
                },
            ],
        };
        assert!(matches!(
            tails_to_form(&half),
            Err(Error::PoleNotQuarter(_))
        ));
    }

    #[test]
    fn zero_form() {
        let pf = PartialFractionForm {
            terms: vec![
                PfTerm {
                    pole: q(1),
                    coeff: int(0),
                },
                PfTerm {
                    pole: q(-3),
                    coeff: int(0),
                },
            ],
        };
        let f = tails_to_form(&pf).unwrap();
        assert!(f.u.is_zero() && f.v.is_zero());
    }

    #[test]
    fn shifted_poles_against_brute_force() {
        // c/(ν − 5/4)^2 − c/(ν + 7/4)^2 summed directly: both collapse to σ₃ terms.
        let pf = PartialFractionForm {
            terms: vec![
                PfTerm {
                    pole: q(5),
                    coeff: int(1),
                },
                PfTerm {
                    pole: q(-7),
                    coeff: int(-1),
                },
            ],
        };
        let f = tails_to_form(&pf).unwrap();
        // the σ parts cancel, leaving a telescoped rational:
        // Σ_{ν≥1} [(ν−5/4)^-2 − (ν+7/4)^-2] = Σ_{ν=1}^{3} (ν − 5/4)^-2
        let expect: BigRat = (1..=3).map(|nu| (int(nu) - rat(5, 4)).pow(-2)).sum();
        assert!(f.u.is_zero());
        assert_eq!(f.v, -expect);
    }
}
