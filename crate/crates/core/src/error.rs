use thiserror::Error;

/// Errors raised by the exact-arithmetic pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("grading mismatch: {0:?} vs {1:?}")]
    GradingMismatch(Vec<i64>, Vec<i64>),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("coefficient of grade {grade} lies beyond truncation order {order}")]
    OutOfRange { grade: i64, order: i64 },

    #[error("index {index} out of range 1..={max}")]
    Index { index: usize, max: usize },

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("configuration error: {0}")]
    Config(String),

    #[error("input error: {0}")]
    Io(String),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
