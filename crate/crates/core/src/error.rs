use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("leaf index {index} out of range 1..={leaves}")]
    LeafIndex { index: usize, leaves: usize },

    #[error("element is not in F (class {0})")]
    NotInF(String),

    #[error("the identity has no wandering set")]
    Identity,

    #[error("point {0} is outside the open unit interval")]
    PointOutOfRange(String),

    /// Search budgets ran out before a certificate was found.
    #[error("inconclusive: {0}")]
    Inconclusive(String),

    /// An internally constructed witness failed its own check.
    #[error("integrity failure: {0}")]
    Integrity(String),

    /// A certificate claim did not re-verify.
    #[error("verification failed: {0}")]
    Verification(String),
}

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
