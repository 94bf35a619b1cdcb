use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix dimension must be positive")]
    EmptyMatrix,
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value at position {index}")]
    NonFinite { index: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("zero pivot at diagonal index {index}")]
    Singular { index: usize },
    #[error("matrix is not positive definite (pivot {index} = {pivot})")]
    NotPositiveDefinite { index: usize, pivot: f64 },
    #[error("eigendecomposition did not converge")]
    EigenNoConvergence,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("series is too short: need at least {min}, got {len}")]
    SeriesTooShort { min: usize, len: usize },
    #[error("degenerate input: {0}")]
    Degenerate(&'static str),
    #[error("evaluation failed at iteration {iteration}: {message}")]
    Evaluation { iteration: usize, message: String },
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    pub(crate) fn data(msg: impl Into<String>) -> Self {
        Error::InvalidData(msg.into())
    }
}
