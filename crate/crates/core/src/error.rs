use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not a prime in [2, 2^31)")]
    NotPrime(u64),

    #[error("field mismatch: F_{left} vs F_{right}")]
    FieldMismatch { left: u64, right: u64 },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("invalid complex at degree {degree}: {reason}")]
    InvalidComplex { degree: i32, reason: String },

    #[error("invalid chain map at degree {degree}: {reason}")]
    InvalidMap { degree: i32, reason: String },

    #[error("validation failed: {0}")]
    Violation(String),

    #[error("no solution: {0}")]
    NoSolution(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn violation(msg: impl Into<String>) -> Error {
    Error::Violation(msg.into())
}
