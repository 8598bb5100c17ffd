//! Exact rational linear forms `u·G − v` built from partial fractions.
//!
//! Two families are constructed: the original forms `(u_n, v_n)` from the
//! rational function `R_n(t)` and the modified forms `(ũ_n, ṽ_n)` from
//! `R̃_n(t)`. Both run through the same engine: [`decompose`] produces simple
//! poles at quarter-odd points and [`tails_to_form`] collapses the resulting
//! sums of inverse squares into multiples of `G` plus a rational.

mod partial;

pub use partial::{decompose, tails_to_form, PartialFractionForm, PfTerm};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{de_rat, factorial, int_poly_eval, ser_rat, BigRat, QuarterInt};
use crate::error::{Error, Result};
use crate::hyper::{HpReal, RationalSummand, SeriesValue};

/// The real number `u·G − v`, also read as `u·σ₁ − u·σ₃ − v` with
/// `σ₁ = Σ (4μ+1)^-2` and `σ₃ = Σ (4μ+3)^-2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinearFormQG {
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub u: BigRat,
    #[serde(serialize_with = "ser_rat", deserialize_with = "de_rat")]
    pub v: BigRat,
}

impl LinearFormQG {
    pub fn new(u: BigRat, v: BigRat) -> Self {
        LinearFormQG { u, v }
    }

    pub fn sigma1_coeff(&self) -> BigRat {
        self.u.clone()
    }

    pub fn sigma3_coeff(&self) -> BigRat {
        -self.u.clone()
    }

    pub fn const_coeff(&self) -> BigRat {
        -self.v.clone()
    }

    /// `u·G − v` for a given approximation of `G`.
    pub fn evaluate(&self, g: &HpReal) -> HpReal {
        &g.mul_rat(&self.u) - &HpReal::from_rat(&self.v, g.bits())
    }
}

fn quarter(n: i64) -> QuarterInt {
    QuarterInt::from_quarters(n)
}

fn sign(n: u64) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The closed-form partial-fraction coefficients `A_l` (pole `l − n/2 − 3/4`
/// side) and `A'_l`, `l = 0..=n`.
pub fn coeffs_a(n: u64) -> (Vec<BigRat>, Vec<BigRat>) {
    let f = |k: u64| factorial(k);
    let two_n1 = f(2 * n + 1);
    let n_rat = BigRat::new(BigInt::from(n), BigInt::from(2));
    let s = sign(n);
    let a = (0..=n)
        .map(|l| {
            let t = -BigRat::from_integer(BigInt::from(l))
                + &n_rat
                + BigRat::new(BigInt::from(3), BigInt::from(4));
            let i = int_poly_eval(n, &QuarterInt::try_from_rat(&t).expect("quarter point"));
            BigRat::new(
                BigInt::from(s) * &two_n1,
                f(2 * l) * f(2 * n - 2 * l + 1) * 16,
            ) * &i
                * &i
        })
        .collect();
    let a_prime = (0..=n)
        .map(|l| {
            let t = -BigRat::from_integer(BigInt::from(l))
                + &n_rat
                + BigRat::new(BigInt::one(), BigInt::from(4));
            let i = int_poly_eval(n, &QuarterInt::try_from_rat(&t).expect("quarter point"));
            BigRat::new(
                BigInt::from(-s) * &two_n1,
                f(2 * l + 1) * f(2 * n - 2 * l) * 16,
            ) * &i
                * &i
        })
        .collect();
    (a, a_prime)
}

/// `(u_n, v_n)` from the closed formulas with `m = ⌊(n+1)/2⌋`, `m' = ⌊n/2⌋`,
/// `ε = 1` (n even) or `3` (n odd) and `ε' = 4 − ε`.
pub fn un_vn(n: u64) -> LinearFormQG {
    let (a, ap) = coeffs_a(n);
    let sixteen = BigRat::from_integer(BigInt::from(16));
    let u = &sixteen * BigRat::from_integer(BigInt::from(sign(n))) * a.iter().sum::<BigRat>();
    let m = n.div_ceil(2) as usize;
    let mp = (n / 2) as usize;
    let eps: i64 = if n % 2 == 0 { 1 } else { 3 };
    let epsp = 4 - eps;
    let inv_sq = |x: i64| BigRat::new(BigInt::one(), BigInt::from(x * x));
    // Σ_{μ=1}^{k} (4μ − e)^-2 and Σ_{μ=0}^{k-1} (4μ + e)^-2 as prefix tables
    let len = n as usize + 2;
    let prefix = |f: &dyn Fn(i64) -> BigRat| {
        let mut out = vec![BigRat::zero(); len];
        for k in 1..len {
            out[k] = &out[k - 1] + f(k as i64);
        }
        out
    };
    let minus_e = prefix(&|mu| inv_sq(4 * mu - eps));
    let minus_ep = prefix(&|mu| inv_sq(4 * mu - epsp));
    let plus_e = prefix(&|k| inv_sq(4 * (k - 1) + eps));
    let plus_ep = prefix(&|k| inv_sq(4 * (k - 1) + epsp));
    let mut v = BigRat::zero();
    for (l, al) in a.iter().enumerate().take(m) {
        v -= al * &minus_e[m - l];
    }
    for (l, al) in ap.iter().enumerate().take(mp) {
        v -= al * &minus_ep[mp - l];
    }
    for (l, al) in a.iter().enumerate().skip(m + 1) {
        v += al * &plus_e[l - m];
    }
    for (l, al) in ap.iter().enumerate().skip(mp + 1) {
        v += al * &plus_ep[l - mp];
    }
    LinearFormQG::new(u, sixteen * v)
}

/// Numerator roots, denominator roots and scale of `R_n(t)`.
pub fn r_data(n: u64) -> (Vec<QuarterInt>, Vec<QuarterInt>, BigRat) {
    let scale = BigRat::new(
        BigInt::from(sign(n)) * factorial(2 * n + 1),
        factorial(n).pow(2) * 8 * (BigInt::one() << (2 * n + 2)),
    );
    let numer: Vec<QuarterInt> = (1..=n as i64)
        .chain(1..=n as i64)
        .map(QuarterInt::from_int)
        .collect();
    let n = n as i64;
    let denom = (0..=2 * n + 1)
        .map(|j| quarter(2 * n + 3 - 2 * j))
        .collect();
    (numer, denom, scale)
}

/// Numerator roots, denominator roots and scale of `R̃_n(t)`, `n ≥ 1`.
pub fn tilde_r_data(n: u64) -> (Vec<QuarterInt>, Vec<QuarterInt>, BigRat) {
    assert!(n >= 1, "R̃_n is defined for n ≥ 1");
    let scale = BigRat::new(
        BigInt::from(sign(n)) * factorial(2 * n),
        factorial(n - 1).pow(2) * 2 * (BigInt::one() << (2 * n + 1)),
    );
    let n = n as i64;
    let numer: Vec<QuarterInt> = (1..n).chain(1..=n).map(QuarterInt::from_int).collect();
    let denom = (0..=2 * n).map(|j| quarter(2 * n + 1 - 2 * j)).collect();
    (numer, denom, scale)
}

/// `(u_n, v_n)` through the generic partial-fraction engine.
pub fn un_vn_via_partial_fractions(n: u64) -> Result<LinearFormQG> {
    let (num, den, scale) = r_data(n);
    tails_to_form(&decompose(&num, &den, &scale)?)
}

/// `(ũ_n, ṽ_n)`; `n = 0` is the stored base case `(0, −1)`.
pub fn tilde_un_vn(n: u64) -> Result<LinearFormQG> {
    if n == 0 {
        return Ok(LinearFormQG::new(BigRat::zero(), -BigRat::one()));
    }
    let (num, den, scale) = tilde_r_data(n);
    tails_to_form(&decompose(&num, &den, &scale)?)
}

/// Which of the two families a table refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Original,
    Tilde,
}

impl Family {
    pub fn form(self, n: u64) -> Result<LinearFormQG> {
        match self {
            Family::Original => Ok(un_vn(n)),
            Family::Tilde => tilde_un_vn(n),
        }
    }
}

/// Forms for `n` in `range`, computed in parallel and returned in order.
pub fn forms_table(
    family: Family,
    range: std::ops::RangeInclusive<u64>,
) -> Result<Vec<LinearFormQG>> {
    range.into_par_iter().map(|n| family.form(n)).collect()
}

/// The summand of the original series, shifted so that its first nonzero
/// term sits at `k = 0`:
/// `(n!/4)(k + (3n+1)/2) Π_{i≤n}(k+i) Π_{j≤n}(k+2n+j) / Π_{j=0}^{n}(k+n+j+1/2)^3`.
pub fn rn_summand(n: u64) -> RationalSummand {
    let r = |x: i64| BigRat::from_integer(BigInt::from(x));
    let n_i = n as i64;
    let mut shifts = vec![BigRat::new(BigInt::from(3 * n_i + 1), BigInt::from(2))];
    shifts.extend((1..=n_i).map(r));
    shifts.extend((1..=n_i).map(|j| r(2 * n_i + j)));
    let poles = (0..=n_i)
        .map(|j| {
            (
                BigRat::new(BigInt::from(2 * (n_i + j) + 1), BigInt::from(2)),
                3,
            )
        })
        .collect();
    let scale = BigRat::new(factorial(n) * sign(n), BigInt::from(4));
    RationalSummand::new(scale, &shifts, poles).expect("well-formed summand")
}

/// `r_n` from its alternating series, with a rigorous error below `2^-(bits-8)`.
pub fn rn_numeric(n: u64, bits: u32) -> Result<SeriesValue> {
    if bits < 64 {
        return Err(Error::Domain(format!(
            "precision {bits} is below the 64-bit minimum"
        )));
    }
    rn_summand(n).alternating_sum(bits, &HpReal::ulp(bits - 8))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::hyper::catalan;

    #[test]
    fn closed_coefficients_at_zero() {
        assert_eq!(coeffs_a(0), (vec![rat(1, 16)], vec![rat(-1, 16)]));
    }

    #[test]
    fn coefficient_identities() {
        for n in 0..=30u64 {
            let (a, ap) = coeffs_a(n);
            assert_eq!(a.len(), n as usize + 1);
            let total: BigRat = a.iter().chain(&ap).sum();
            assert!(total.is_zero(), "n = {n}");
            let scale = BigRat::from_integer(BigInt::one() << (6 * n + 4));
            assert!(
                a.iter().chain(&ap).all(|x| (x * &scale).is_integer()),
                "n = {n}"
            );
            let u = un_vn(n).u;
            let sa: BigRat = a.iter().sum();
            let sap: BigRat = ap.iter().sum();
            assert_eq!(u, sa * int(16 * sign(n)));
            assert_eq!(u, sap * int(-16 * sign(n)));
        }
    }

    #[test]
    fn anchors() {
        assert_eq!(un_vn(0), LinearFormQG::new(int(1), int(0)));
        assert_eq!(tilde_un_vn(0).unwrap(), LinearFormQG::new(int(0), int(-1)));
        assert_eq!(tilde_un_vn(1).unwrap(), LinearFormQG::new(int(6), int(5)));
        assert_eq!(
            tilde_un_vn(2).unwrap(),
            LinearFormQG::new(rat(115, 2), rat(1897, 36))
        );
    }

    #[test]
    fn tilde_r1_coefficients_sum_to_zero() {
        let (num, den, scale) = tilde_r_data(1);
        let pf = decompose(&num, &den, &scale).unwrap();
        assert_eq!(pf.terms.len(), 3);
        assert!(pf.coefficient_sum().is_zero());
    }

    #[test]
    fn two_paths_agree() {
        for n in 0..=25 {
            assert_eq!(un_vn(n), un_vn_via_partial_fractions(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn sigma_split() {
        let f = tilde_un_vn(2).unwrap();
        assert_eq!(f.sigma1_coeff(), -f.sigma3_coeff());
        assert_eq!(f.const_coeff(), -f.v.clone());
    }

    #[test]
    fn series_matches_forms() {
        let g = catalan(300);
        for n in [0u64, 1, 3, 6] {
            let r = rn_numeric(n, 256).unwrap();
            let exact = un_vn(n).evaluate(&g);
            let diff = (&r.value - &exact).abs().to_rat();
            assert!(diff < HpReal::ulp(128), "n = {n}");
            assert!(r.error < HpReal::ulp(128));
        }
    }

    #[test]
    fn remainder_ratio_near_limit() {
        // r_9/r_8 ≈ 0.0805; the limit is ((√5 − 1)/2)^5 ≈ 0.0902
        let r: Vec<f64> = (8..=9)
            .map(|n| rn_numeric(n, 256).unwrap().value.to_f64().abs())
            .collect();
        let target = ((5f64.sqrt() - 1.0) / 2.0).powi(5);
        assert!((r[1] / r[0] - target).abs() < 0.15 * target);
    }

    #[test]
    fn low_precision_rejected() {
        assert!(rn_numeric(1, 32).is_err());
    }

    #[test]
    fn denominators_are_powers_of_two() {
        for n in 0..=40u64 {
            for x in [un_vn(n).u, tilde_un_vn(n).unwrap().u] {
                let d = x.denom().clone();
                assert!((&d & (&d - 1u32)).is_zero(), "n = {n}");
            }
        }
    }
}
