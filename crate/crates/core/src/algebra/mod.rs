//! Coefficient ring, exterior forms and the Clifford product.

mod clifford;
mod form;
mod scalar;

pub use clifford::{supertrace_even, trace_odd, CliffordElement};
pub use form::{blade_indices, blade_sign, FormElement, Matrix, ProductRule};
pub use scalar::{
    bernoulli, factorial, gamma_half, int, parse_rational, rat, rational_string, rational_to_f64,
    Cyclo8, ExtScalar, GradedSum, Rational,
};

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(u32, u32),
    #[error("twist rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("pi-grade mismatch: pi^({0}/2) vs pi^({1}/2)")]
    GradeMismatch(i32, i32),
    #[error("{op} requires {expected} dimension, got n = {n}")]
    Parity { op: &'static str, expected: &'static str, n: u32 },
    #[error("cannot parse rational {0:?}")]
    Parse(String),
}
