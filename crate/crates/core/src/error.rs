use thiserror::Error;

/// Errors raised by the combinatorial kernel.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value out of range: {0}")]
    Range(String),
    #[error("kind or size mismatch: {0}")]
    Mismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unsupported operation: {0}")]
    Unsupported(String),
    #[error("resource guard: {what} would produce {count} items (limit {limit})")]
    ResourceLimit {
        what: String,
        count: u128,
        limit: u128,
    },
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
