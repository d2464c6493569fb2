use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("non-finite entry in matrix")]
    NonFinite,

    #[error("Kraus set is not trace preserving (completeness residual {residual:.3e})")]
    NotTracePreserving { residual: f64 },

    #[error("operator is not positive semidefinite (min eigenvalue {min_eig:.3e})")]
    NotPsd { min_eig: f64 },

    #[error("linear map is not invertible (condition number {condition:.3e})")]
    NotInvertible { condition: f64 },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("size overflow: {0}")]
    SizeOverflow(String),

    #[error("unknown channel `{0}`")]
    UnknownChannel(String),

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
