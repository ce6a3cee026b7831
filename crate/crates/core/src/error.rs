use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("invalid request: {0}")]
    InvalidRequest(String),
    #[error("inconsistent tangency profile: I(alpha) + I(beta) = {got}, expected {expected}")]
    InconsistentProfile { got: u64, expected: u64 },
    #[error("tropical curve is not weightless and trivalent: {0}")]
    NotTrivalent(String),
    #[error("invalid combinatorial type: {0}")]
    InvalidType(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("no generic configuration found after {attempts} attempts")]
    GenericityExhausted { attempts: u32 },
    #[error("marked point coincides with a side point")]
    MarkCollision,
}

pub type Result<T> = std::result::Result<T, Error>;
