use thiserror::Error;

/// Errors raised anywhere in the toolkit.
///
/// `Internal` means an engine self-test tripped; it always indicates a bug
/// (or a bad transcription) rather than bad user input.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("inconsistent presentation: {0}")]
    Inconsistent(String),

    #[error("group of order {p}^{n} exceeds the enumeration cap {p}^{cap}")]
    TooLarge { p: u32, n: usize, cap: usize },

    #[error("oracle cap exceeded: |G| = {order} > {cap}")]
    OracleCap { order: u64, cap: u64 },

    #[error("invalid parameter for {id}: {msg}")]
    Parameter { id: String, msg: String },

    #[error("unknown catalog id `{0}`")]
    UnknownGroup(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("foreign torsion: elementary divisor {0} is not a power of {1}")]
    ForeignTorsion(String, u32),

    #[error("internal error: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// Prefix the message with a group id, keeping the variant.
    pub fn with_context(self, ctx: &str) -> Self {
        match self {
            Error::Input(m) => Error::Input(format!("{ctx}: {m}")),
            Error::Inconsistent(m) => Error::Inconsistent(format!("{ctx}: {m}")),
            Error::Precondition(m) => Error::Precondition(format!("{ctx}: {m}")),
            Error::Internal(m) => Error::Internal(format!("{ctx}: {m}")),
            other => other,
        }
    }
}
