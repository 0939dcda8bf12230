use thiserror::Error;

/// Errors raised by tract arithmetic, rank searches and file parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element `{element}` does not belong to tract `{tract}`")]
    TagMismatch { tract: String, element: String },
    #[error("tract mismatch: `{0}` vs `{1}`")]
    TractMismatch(String, String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("tract `{tract}` is not supported by {operation}")]
    UnsupportedTract { tract: String, operation: &'static str },
    #[error("size guard `{guard}` exceeded: {actual} > {limit}")]
    Guard {
        guard: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn guard(guard: &'static str, limit: usize, actual: usize) -> Result<()> {
    if actual > limit {
        Err(Error::Guard { guard, limit, actual })
    } else {
        Ok(())
    }
}
