use thiserror::Error;

use crate::arith::BigRat;

#[derive(Debug, Error)]
pub enum Error {
    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("zero has no 2-adic valuation")]
    ZeroValuation,

    #[error("repeated denominator root {0}; only simple poles are supported")]
    RepeatedPole(String),

    #[error("numerator degree {numer} must not exceed denominator degree {denom} minus 2")]
    DegreeCondition { numer: usize, denom: usize },

    #[error("partial-fraction coefficients sum to {0}, not 0")]
    NonzeroCoefficientSum(BigRat),

    #[error("pole {0} is not of the form m ± 1/4")]
    PoleNotQuarter(String),

    #[error("leading coefficient of the recurrence vanishes at n = {0}")]
    LeadingCoefficientVanishes(i64),

    #[error("Γ has a pole at {0}")]
    GammaPole(String),

    #[error("series does not converge: {0}")]
    Divergent(String),

    #[error("term budget of {budget} exhausted with error bound {achieved:.3e} above the target")]
    BudgetExceeded { budget: usize, achieved: f64 },

    #[error("requested precision is unreachable: {0}")]
    PrecisionUnreachable(String),

    #[error("ill-formed parameter vector: {0}")]
    IllFormed(String),

    #[error("inadmissible parameter c{label} = {value}")]
    Inadmissible { label: String, value: String },

    #[error("group closure exceeded {0} elements")]
    ClosureOverflow(usize),
}

impl Error {
    /// True for failures caused by numeric precision or term budgets.
    pub fn is_precision_failure(&self) -> bool {
        matches!(
            self,
            Error::BudgetExceeded { .. } | Error::PrecisionUnreachable(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
