use thiserror::Error;

/// Errors raised by diagram construction, relation handling and elimination.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed matching, framing vector of the wrong length, or similar.
    #[error("structural input error: {0}")]
    Structural(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("order mismatch: expected {expected}, found {found}")]
    OrderMismatch { expected: usize, found: usize },

    /// A coefficient that has no image in the requested field (e.g. 1/2 over GF(2)).
    #[error("coefficient {0} is not defined over GF(2)")]
    Field(String),

    #[error("order {order} exceeds the configured capacity {max}")]
    Capacity { order: usize, max: usize },

    #[error("{0}")]
    Domain(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
