//! Crate-wide error type.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Non-finite or otherwise malformed input values.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A domain description violating the shape invariants.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),

    /// A configuration that cannot be run (resolution too coarse, parameter out of range).
    #[error("configuration error: {0}")]
    Configuration(String),

    /// A point outside the region where the requested quantity is defined.
    #[error("point outside domain: {0}")]
    OutsideDomain(String),

    /// An operation applied to data it does not support.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Gradient-flow start point unusable (outside, or gradient below tolerance).
    #[error("invalid flow start: {0}")]
    InvalidStart(String),

    /// Too few usable samples to produce the requested statistic.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("malformed field file: {0}")]
    FieldFormat(String),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
