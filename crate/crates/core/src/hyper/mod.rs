//! High-precision evaluation: binary reals, exact Γ at half-integers,
//! hypergeometric series at `z = ±1`, and the checks built on them.

mod alternating;
mod gamma;
mod real;
mod series;

pub use alternating::{catalan, RationalSummand};
pub use gamma::{beta_exact, gamma_exact, gamma_exact_rat, GammaExact};
pub use real::{f64_of, sci, HpReal};
pub use series::{
    pfq_extrapolated, pfq_truncated, Argument, Hypergeometric, Method, SeriesValue,
    DEFAULT_TERM_BUDGET, LEVIN_MAX_ORDER,
};

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{ser_rat, BigRat, QuarterInt};
use crate::error::{Error, Result};
use crate::group::{CVector, Label};

/// How a convergent series is to be summed.
#[derive(Clone, Debug)]
pub enum EvalMode {
    /// Direct summation to a rigorous error `target` within `budget` terms.
    Certified { target: BigRat, budget: usize },
    /// Levin extrapolation; errors are estimates.
    Extrapolated,
}

impl EvalMode {
    pub fn certified(target: BigRat) -> Self {
        EvalMode::Certified {
            target,
            budget: DEFAULT_TERM_BUDGET,
        }
    }

    fn sum(&self, hg: &Hypergeometric, bits: u32) -> Result<SeriesValue> {
        match self {
            EvalMode::Certified { target, budget } => hg.sum_certified(bits, target, *budget),
            EvalMode::Extrapolated => hg.sum_extrapolated(bits),
        }
    }
}

fn half() -> BigRat {
    BigRat::new(BigInt::one(), BigInt::from(2))
}

/// Both sides of Whipple's `6F5(-1) = Γ-ratio · 3F2(1)` transformation.
#[derive(Clone, Debug)]
pub struct WhippleCheck {
    pub lhs: SeriesValue,
    pub rhs_series: SeriesValue,
    pub gamma_ratio: GammaExact,
    /// `|LHS − RHS|` as computed.
    pub residual: BigRat,
    /// Combined error figure of the two evaluations.
    pub error: BigRat,
}

/// Evaluates both sides of the very-well-poised `6F5(-1)` to `3F2(1)`
/// transformation for parameters `a, b, c, d, e`.
pub fn whipple_check(params: [&QuarterInt; 5], bits: u32, mode: &EvalMode) -> Result<WhippleCheck> {
    let [a, b, c, d, e] = params.map(QuarterInt::to_rat);
    let one = BigRat::one();
    let ap = &one + &a;
    if !(&ap - &d - &e).is_positive() {
        return Err(Error::Domain(format!(
            "1 + a - d - e = {} is not positive",
            &ap - &d - &e
        )));
    }
    let gamma_ratio = &(&gamma_exact_rat(&(&ap - &d))? * &gamma_exact_rat(&(&ap - &e))?)
        / &(&gamma_exact_rat(&ap)? * &gamma_exact_rat(&(&ap - &d - &e))?);

    let lhs = Hypergeometric::new(
        vec![
            a.clone(),
            &one + &a * half(),
            b.clone(),
            c.clone(),
            d.clone(),
            e.clone(),
        ],
        vec![&a * half(), &ap - &b, &ap - &c, &ap - &d, &ap - &e],
        Argument::MinusOne,
    )?;
    let rhs = Hypergeometric::new(
        vec![&ap - &b - &c, d, e],
        vec![&ap - &b, &ap - &c],
        Argument::One,
    )?;
    let work = bits + 16;
    let lhs = mode.sum(&lhs, work)?;
    let rhs_series = mode.sum(&rhs, work)?;
    let ratio = gamma_ratio.to_real(work);
    let rhs_value = &ratio * &rhs_series.value;
    let residual = (&lhs.value - &rhs_value).to_rat().abs();
    let ratio_abs = ratio.to_rat().abs() + BigRat::one();
    let error = &lhs.error + &rhs_series.error * ratio_abs;
    Ok(WhippleCheck {
        lhs,
        rhs_series,
        gamma_ratio,
        residual,
        error,
    })
}

/// The parameters `(3n+1, n+1/2, n+1/2, n+1/2, n+1)` used for the original forms.
pub fn whipple_family(n: i64) -> [QuarterInt; 5] {
    let h = QuarterInt::from_halves(2 * n + 1);
    [
        QuarterInt::from_int(3 * n + 1),
        h.clone(),
        h.clone(),
        h,
        QuarterInt::from_int(n + 1),
    ]
}

/// `H(c)` split as `prefactor · 3F2(...)`, with `prefactor = B(c21+1, c22+1)·B(c31+1, c33+1)`.
#[derive(Clone, Debug)]
pub struct HValue {
    pub prefactor: GammaExact,
    pub series: SeriesValue,
    pub value: HpReal,
    pub error: BigRat,
}

impl HValue {
    pub fn method(&self) -> Method {
        self.series.method
    }
}

/// `H(c) = ∫∫ x^c21 (1-x)^c22 y^c31 (1-y)^c33 / (1-xy)^(c11+1) dx dy`.
///
/// Expanding `(1-xy)^-(c11+1)` and integrating termwise gives
/// `B(c21+1, c22+1) B(c31+1, c33+1) · 3F2(c11+1, c21+1, c31+1; c21+c22+2, c31+c33+2 | 1)`.
pub fn h_value(c: &CVector, bits: u32, mode: &EvalMode) -> Result<HValue> {
    let g = |l: Label| c.get(l).clone();
    let (c11, c21, c22, c31, c33) = (
        g(Label::C11),
        g(Label::C21),
        g(Label::C22),
        g(Label::C31),
        g(Label::C33),
    );
    let one = BigRat::one();
    let two = &one + &one;
    let exponent = &c22 + &c33 + &one - &c11;
    if !exponent.is_positive() {
        return Err(Error::Divergent(format!(
            "c22 + c33 + 1 - c11 = {exponent} is not positive"
        )));
    }
    c.check_admissible()?;
    let prefactor =
        &beta_exact(&(&c21 + &one), &(&c22 + &one))? * &beta_exact(&(&c31 + &one), &(&c33 + &one))?;
    let hg = Hypergeometric::new(
        vec![&c11 + &one, &c21 + &one, &c31 + &one],
        vec![&c21 + &c22 + &two, &c31 + &c33 + &two],
        Argument::One,
    )?;
    let work = bits + 16;
    let series = mode.sum(&hg, work)?;
    let p = prefactor.to_real(work);
    let value = (&p * &series.value).with_bits(bits);
    let error = &series.error * (p.to_rat().abs() + BigRat::one()) + HpReal::ulp(bits);
    Ok(HValue {
        prefactor,
        series,
        value,
        error,
    })
}

/// `H(c)` for demi-integral `c`, where every series term is rational.
pub fn h_beta_series(c: &CVector, bits: u32, mode: &EvalMode) -> Result<HValue> {
    if !c.is_demi_integral()? {
        return Err(Error::Domain(
            "h_beta_series needs a demi-integral parameter set".into(),
        ));
    }
    let h = h_value(c, bits, mode)?;
    debug_assert!(h.prefactor.is_rational());
    Ok(h)
}

/// The parameter set of the double integral attached to `(ũ_n, ṽ_n)`.
pub fn euler_vector(n: i64) -> CVector {
    let q = |x: i64| BigRat::new(BigInt::from(x), BigInt::from(2));
    // (c00, c21, c22, c33, c31)
    CVector::from_primed([
        q(2 * n + 1),
        q(2 * n - 3),
        q(2 * n),
        q(2 * n - 1),
        q(2 * n - 2),
    ])
}

#[derive(Clone, Debug, Serialize)]
pub struct EulerCheck {
    pub n: i64,
    pub h_decimal: String,
    pub form_decimal: String,
    #[serde(serialize_with = "ser_rat")]
    pub residual: BigRat,
    #[serde(serialize_with = "ser_rat")]
    pub error: BigRat,
    pub method: Method,
}

/// Compares `ũ_n G − ṽ_n` with `(-1)^(n-1) (n/2) H(c(n))`.
pub fn euler_integral_check(n: i64, bits: u32, mode: &EvalMode) -> Result<EulerCheck> {
    if n < 1 {
        return Err(Error::Domain(format!(
            "n = {n}; the integral identity starts at n = 1"
        )));
    }
    let h = h_beta_series(&euler_vector(n), bits, mode)?;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let factor = BigRat::new(BigInt::from(sign * n), BigInt::from(2));
    let scaled = h.value.mul_rat(&factor);
    let form = crate::linear_forms::tilde_un_vn(n as u64)?
        .evaluate(&catalan(bits + 16))
        .with_bits(bits);
    let residual = (&scaled - &form).to_rat().abs();
    let error = &h.error * factor.abs() + HpReal::ulp(bits - 2);
    Ok(EulerCheck {
        n,
        h_decimal: h.value.to_decimal(40),
        form_decimal: form.to_decimal(40),
        residual,
        error,
        method: h.method(),
    })
}
