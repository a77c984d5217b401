use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Shapes that do not fit together (empty vectors, mismatched lengths).
    #[error("structural error: {0}")]
    Structural(String),

    /// A ballot outside the allowed set of the voting rule.
    #[error("ballot {ballot:?} is not allowed under {rule}")]
    RuleViolation { rule: String, ballot: Vec<u32> },

    /// An enumeration would exceed a configured bound.
    #[error("capacity exceeded: {what} (bound {bound}, reached {reached})")]
    Capacity {
        what: String,
        bound: u64,
        reached: u64,
    },

    /// A weak preference order where the operation needs a unique answer.
    #[error("ambiguous preferences: {0}")]
    Ambiguity(String),

    /// A metric applied outside its domain (e.g. EMD on unequal totals).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("configuration error: {0}")]
    Configuration(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn capacity(what: impl Into<String>, bound: u64, reached: u64) -> Self {
        Error::Capacity {
            what: what.into(),
            bound,
            reached,
        }
    }

    pub(crate) fn structural(msg: impl Into<String>) -> Self {
        Error::Structural(msg.into())
    }

    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::Configuration(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
