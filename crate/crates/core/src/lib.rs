//! Exact rational linear forms in Catalan's constant `G`: construction from
//! partial fractions, the order-two recursion they satisfy, its continued
//! fraction, certified hypergeometric evaluation, the order-120 Whipple group
//! acting on `₃F₂(1)` parameters, and Perron-basis diagnostics.

pub mod arith;
pub mod cf;
pub mod cli;
pub mod conjecture;
pub mod error;
pub mod group;
pub mod hyper;
pub mod linear_forms;
pub mod recurrence;

pub use error::{Error, Result};
