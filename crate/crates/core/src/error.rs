//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero: {0}")]
    DivisionByZero(String),

    #[error("conductor mismatch: {0} vs {1}")]
    ConductorMismatch(u64, u64),

    #[error("{0} does not divide {1}")]
    NonDivisible(u64, u64),

    #[error("weight mismatch: {0} vs {1}")]
    WeightMismatch(u64, u64),

    #[error("resource bound exceeded: {0}")]
    BoundExceeded(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
