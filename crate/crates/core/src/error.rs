use crate::coeffspec::CoeffError;
use crate::scalar::ScalarError;

/// Errors from the numerical operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    /// A division by zero at a specific index of a backward or weighted pass.
    #[error("zero denominator at index {index} ({what})")]
    ZeroDenominator { index: usize, what: &'static str },
    /// `a_m = 0` during a backward pass that divides by it.
    #[error("a_{index} = 0; backward recurrence cannot continue")]
    ZeroNumerator { index: usize },
    #[error("backward solution has x_0 = 0; cannot normalize")]
    Normalization,
    /// `Phi_{1,n} = 0`: the matching convergent has a zero denominator.
    #[error("degenerate series denominator Phi_(1,{n}) = 0")]
    Degenerate { n: usize },
    #[error("index set of size {size} exceeds the enumeration limit {limit}")]
    EnumerationGuard { size: usize, limit: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("domain error: {0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
