//! Integer relations `a·H + b·G + c = 0` by lattice reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::{c_from_h, m_params, CVector, HParams, MParams};
use crate::arith::{ser_rat, BigRat};
use crate::error::Result;
use crate::hyper::{catalan, euler_vector, h_beta_series, EvalMode, HpReal, Method};

fn dot(a: &[BigRat], b: &[BigRat]) -> BigRat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// LLL reduction with `δ = 3/4`, in exact rational arithmetic.
pub fn lll_reduce(mut basis: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let n = basis.len();
    if n == 0 {
        return basis;
    }
    let delta = BigRat::new(BigInt::from(3), BigInt::from(4));
    let as_rat = |v: &[BigInt]| {
        v.iter()
            .cloned()
            .map(BigRat::from_integer)
            .collect::<Vec<_>>()
    };

    let gram_schmidt = |basis: &[Vec<BigInt>]| {
        let mut star: Vec<Vec<BigRat>> = Vec::with_capacity(n);
        let mut mu = vec![vec![BigRat::zero(); n]; n];
        let mut norms = Vec::with_capacity(n);
        for i in 0..n {
            let bi = as_rat(&basis[i]);
            let mut v = bi.clone();
            for j in 0..i {
                mu[i][j] = if norms[j] == BigRat::zero() {
                    BigRat::zero()
                } else {
                    dot(&bi, &star[j]) / &norms[j]
                };
                for (x, y) in v.iter_mut().zip(&star[j]) {
                    *x -= &mu[i][j] * y;
                }
            }
            norms.push(dot(&v, &v));
            star.push(v);
        }
        (mu, norms)
    };

    let (mut mu, mut norms) = gram_schmidt(&basis);
    let mut k = 1;
    while k < n {
        for j in (0..k).rev() {
            let q = mu[k][j].round().to_integer();
            if !q.is_zero() {
                let bj = basis[j].clone();
                for (x, y) in basis[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
                (mu, norms) = gram_schmidt(&basis);
            }
        }
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if *lhs >= rhs {
            k += 1;
        } else {
            basis.swap(k, k - 1);
            (mu, norms) = gram_schmidt(&basis);
            k = (k - 1).max(1);
        }
    }
    basis
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status")]
pub enum RelationOutcome {
    /// `H = p·G + q`, verified to the working accuracy.
    Found {
        #[serde(serialize_with = "ser_rat")]
        p: BigRat,
        #[serde(serialize_with = "ser_rat")]
        q: BigRat,
    },
    /// No relation with denominators up to the cap survived verification.
    NoneFound,
    /// A candidate exists but the accuracy cannot rule out a coincidence.
    Inconclusive { reason: String },
}

fn log2_abs(x: &BigInt) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        crate::arith::ln_abs_int(x) / std::f64::consts::LN_2
    }
}

/// Searches `a·H + b·G + c = 0` with small integers, given `H` and `G` each
/// accurate to `2^-accuracy_bits`. A relation is reported only when the
/// accuracy exceeds `3·log2(max coefficient) + 32` bits.
pub fn detect_relation(
    h: &HpReal,
    g: &HpReal,
    accuracy_bits: u32,
    denominator_cap: &BigInt,
) -> RelationOutcome {
    let scale_bits = (accuracy_bits as f64 * 0.9) as u32;
    let big_n = BigInt::one() << scale_bits;
    let round_scaled = |x: &HpReal| {
        let r = x.to_rat() * BigRat::from_integer(big_n.clone());
        r.round().to_integer()
    };
    let basis = vec![
        vec![
            BigInt::one(),
            BigInt::zero(),
            BigInt::zero(),
            round_scaled(h),
        ],
        vec![
            BigInt::zero(),
            BigInt::one(),
            BigInt::zero(),
            round_scaled(g),
        ],
        vec![BigInt::zero(), BigInt::zero(), BigInt::one(), big_n.clone()],
    ];
    let reduced = lll_reduce(basis);
    let tolerance = HpReal::ulp(accuracy_bits.saturating_sub(2));
    let mut inconclusive = None;
    for row in &reduced {
        let (a, b, c) = (&row[0], &row[1], &row[2]);
        if a.is_zero() {
            continue;
        }
        let residual = (h.mul_int(a) + g.mul_int(b)).to_rat() + BigRat::from_integer(c.clone());
        let weight = BigRat::from_integer(a.abs() + b.abs() + BigInt::one());
        if residual.abs() > &tolerance * weight {
            continue;
        }
        let p = BigRat::new(-b, a.clone());
        let q = BigRat::new(-c, a.clone());
        if p.denom() > denominator_cap || q.denom() > denominator_cap {
            continue;
        }
        let max_coef = [a, b, c].iter().map(|x| log2_abs(x)).fold(0.0, f64::max);
        if (accuracy_bits as f64) >= 3.0 * max_coef + 32.0 {
            return RelationOutcome::Found { p, q };
        }
        inconclusive.get_or_insert(format!(
            "candidate ({a}, {b}, {c}) needs {:.0} bits, have {accuracy_bits}",
            3.0 * max_coef + 32.0
        ));
    }
    match inconclusive {
        Some(reason) => RelationOutcome::Inconclusive { reason },
        None if (accuracy_bits as f64) < 3.0 * log2_abs(denominator_cap) + 32.0 => {
            RelationOutcome::Inconclusive {
                reason: format!(
                    "{accuracy_bits} bits cannot exclude denominators up to {denominator_cap}"
                ),
            }
        }
        None => RelationOutcome::NoneFound,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DenominatorProbe {
    pub name: String,
    pub c: CVector,
    pub h_decimal: String,
    pub method: Method,
    pub accuracy_bits: u32,
    pub relation: RelationOutcome,
    pub m_params: MParams,
    pub bound: String,
    pub slack: u32,
    /// `None` when no relation was found.
    pub divides: Option<bool>,
}

/// The test vectors: the integral vectors for `n = 1, 2, 3` and the
/// `c_from_h` family for `n = 1, 2`.
pub fn probe_vectors() -> Vec<(String, CVector)> {
    let mut v: Vec<(String, CVector)> = (1..=3)
        .map(|n| (format!("euler n={n}"), euler_vector(n)))
        .collect();
    v.extend((1..=2).map(|n| (format!("family n={n}"), c_from_h(&HParams::family(n)))));
    v
}

/// Experimental evidence for `2^(2M+s) D_m1 D_m2 H ∈ ZG + Z`.
pub fn probe_denominators(
    vectors: &[(String, CVector)],
    bits: u32,
    slack: u32,
    denominator_cap: &BigInt,
) -> Result<Vec<DenominatorProbe>> {
    let g = catalan(bits + 32);
    vectors
        .par_iter()
        .map(|(name, c)| {
            let h = h_beta_series(c, bits + 32, &EvalMode::Extrapolated)?;
            let err_bits = (-crate::arith::ln_abs_rat(&h.error) / std::f64::consts::LN_2).floor();
            let accuracy_bits = (err_bits.max(0.0) as u32).min(bits).saturating_sub(4);
            let relation = detect_relation(&h.value, &g, accuracy_bits, denominator_cap);
            let mp = m_params(c)?;
            let bound = mp.denominator_bound(slack);
            let divides = match &relation {
                RelationOutcome::Found { p, q } => {
                    Some(bound.is_multiple_of(p.denom()) && bound.is_multiple_of(q.denom()))
                }
                _ => None,
            };
            Ok(DenominatorProbe {
                name: name.clone(),
                c: c.clone(),
                h_decimal: h.value.to_decimal(30),
                method: h.method(),
                accuracy_bits,
                relation,
                m_params: mp,
                bound: bound.to_string(),
                slack,
                divides,
            })
        })
        .collect()
}

/// Smallest slack `s` for which the bound divides, if any up to `max`.
pub fn minimal_slack(row: &DenominatorProbe, max: u32) -> Option<u32> {
    let RelationOutcome::Found { p, q } = &row.relation else {
        return None;
    };
    (0..=max).find(|&s| {
        let b = row.m_params.denominator_bound(s);
        b.is_multiple_of(p.denom()) && b.is_multiple_of(q.denom())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn cap() -> BigInt {
        BigInt::from(10u64.pow(12))
    }

    #[test]
    fn lll_finds_short_vector() {
        let b = vec![
            vec![BigInt::from(1), BigInt::from(0), BigInt::from(1000)],
            vec![BigInt::from(0), BigInt::from(1), BigInt::from(2001)],
        ];
        let r = lll_reduce(b);
        let norm = |v: &Vec<BigInt>| v.iter().map(|x| x * x).sum::<BigInt>();
        assert!(norm(&r[0]) <= BigInt::from(10));
    }

    #[test]
    fn relation_for_g_itself() {
        let g = catalan(256);
        assert_eq!(
            detect_relation(&g, &g, 250, &cap()),
            RelationOutcome::Found {
                p: int(1),
                q: int(0)
            }
        );
    }

    #[test]
    fn relation_for_a_rational() {
        let g = catalan(256);
        let h = HpReal::from_rat(&rat(1, 3), 256);
        assert_eq!(
            detect_relation(&h, &g, 250, &cap()),
            RelationOutcome::Found {
                p: int(0),
                q: rat(1, 3)
            }
        );
    }

    #[test]
    fn relation_for_euler_h() {
        let h = h_beta_series(&euler_vector(1), 256, &EvalMode::Extrapolated).unwrap();
        let g = catalan(256);
        assert_eq!(
            detect_relation(&h.value, &g, 150, &cap()),
            RelationOutcome::Found {
                p: int(12),
                q: int(-10)
            }
        );
    }

    #[test]
    fn low_accuracy_is_inconclusive() {
        let g = catalan(256);
        let h = HpReal::from_rat(&rat(1, 3), 256);
        assert!(matches!(
            detect_relation(&h, &g, 20, &cap()),
            RelationOutcome::Inconclusive { .. }
        ));
    }

    #[test]
    fn pi_like_constant_has_no_relation() {
        let g = catalan(256);
        let pi = HpReal::pi(256);
        assert_eq!(
            detect_relation(&pi, &g, 250, &BigInt::from(1000)),
            RelationOutcome::NoneFound
        );
    }
}
