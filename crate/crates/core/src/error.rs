use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// The requested computation is outside what the brute-force oracles can enumerate.
    #[error("capability exceeded: {0}")]
    Capability(String),

    #[error("element list is not closed: {left} + {right} falls outside it")]
    ClosureViolation { left: String, right: String },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("validation failed: {0}")]
    Validation(String),

    /// A computed value disagrees with a proven closed form. Always an implementation bug.
    #[error("theorem mismatch: {0}")]
    TheoremMismatch(String),
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
