use thiserror::Error;

/// Errors raised by constructors and queries throughout the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid distribution function: {0}")]
    InvalidStepDf(String),

    #[error("invalid quantile function: {0}")]
    InvalidQuantile(String),

    #[error("invalid seminorm family: {0}")]
    InvalidFamily(String),

    #[error("invalid argument `{name}` = {value}: {reason}")]
    InvalidArgument {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "weighted-Linf block of dimension {dim} exceeds the vertex enumeration limit of {limit}; \
         use the Monte-Carlo bound instead"
    )]
    TooManyVertices { dim: usize, limit: usize },

    #[error("operator is singular (or numerically singular, condition {condition:e})")]
    Singular { condition: f64 },

    #[error("operator family is empty")]
    EmptyFamily,

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, value: f64, reason: &'static str) -> Error {
    Error::InvalidArgument {
        name,
        value,
        reason,
    }
}
