use thiserror::Error;

/// Errors produced by the calculus.
///
/// Every variant falls into one of three [`ErrorKind`]s, which the command
/// line front end maps onto its exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid JSON input: {0}")]
    Json(#[from] serde_json::Error),

    #[error("operation index {index} out of range [{lo}, {hi}] at degree {degree}")]
    IndexOutOfRange {
        index: i64,
        lo: i64,
        hi: i64,
        degree: u32,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("no annihilating s found up to cap {cap}")]
    SearchCapExceeded { cap: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Parse,
    Precondition,
    SearchCap,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Parse(_) | Error::Json(_) => ErrorKind::Parse,
            Error::IndexOutOfRange { .. } | Error::Precondition(_) => ErrorKind::Precondition,
            Error::SearchCapExceeded { .. } => ErrorKind::SearchCap,
        }
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
