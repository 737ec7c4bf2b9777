use thiserror::Error;

/// Errors produced while building spaces or running solvers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        got: usize,
    },

    #[error("invalid space spec field `{field}`: {reason}")]
    InvalidSpec { field: String, reason: String },

    #[error("non-finite coordinate in input vector")]
    NonFinite,

    #[error("zero vector is not allowed here")]
    ZeroVector,

    #[error("operation `{0}` requires a genuine norm, got a quasinorm")]
    Quasinorm(&'static str),

    #[error("operation `{0}` requires a coordinate (Koethe) space")]
    NotCoordinate(&'static str),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("solver did not converge: {0}")]
    NonConvergence(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn spec(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::InvalidSpec {
            field: field.into(),
            reason: reason.into(),
        }
    }
}
