use thiserror::Error;

/// Errors raised by the numeric and control routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("matrix is singular to working precision")]
    SingularMatrix,

    #[error("unsupported structure: {0}")]
    UnsupportedStructure(String),

    #[error("insufficient history: {0}")]
    InsufficientHistory(String),

    #[error("regulator state: {0}")]
    State(String),
}

pub type Result<T> = std::result::Result<T, Error>;

macro_rules! invalid {
    ($($arg:tt)*) => {
        $crate::Error::InvalidArgument(format!($($arg)*))
    };
}

macro_rules! mismatch {
    ($($arg:tt)*) => {
        $crate::Error::DimensionMismatch(format!($($arg)*))
    };
}

pub(crate) use invalid;
pub(crate) use mismatch;
