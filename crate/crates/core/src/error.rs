use thiserror::Error;

/// Errors surfaced by the library's fallible operations.
///
/// Internal consistency violations (e.g. a Kostka cross-check mismatch) are
/// bugs, not user errors, and panic instead.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("variable count mismatch: {0} vs {1}")]
    VariableMismatch(usize, usize),

    #[error("weight mismatch: |λ| = {0} but |μ| = {1}")]
    WeightMismatch(u32, u32),

    #[error("polynomial is not symmetric in its variables")]
    NotSymmetric,

    #[error("{num_vars} variables cannot faithfully hold degree {degree}")]
    TooFewVariables { num_vars: usize, degree: u32 },

    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(u32, u32),

    #[error("cyclotomic order mismatch: {0} vs {1}")]
    OrderMismatch(u32, u32),

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("matrix dimensions are incompatible")]
    DimensionMismatch,

    #[error("truncation must be odd and finite, got {0}")]
    NotOddTruncation(String),

    #[error("partition length {0} exceeds the limit {1}")]
    LengthExceeded(usize, usize),
}
