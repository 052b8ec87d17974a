use thiserror::Error;

/// Crate-wide error type. The variants map onto the CLI exit codes:
/// parse failures (1), bound violations (2), inconsistent inputs (3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("bounds exceeded: {0}")]
    Bounds(String),
    #[error("inconsistency: {0}")]
    Inconsistency(String),
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
