use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("weight arithmetic overflow")]
    Overflow,

    #[error("budget exceeded: {0}")]
    Budget(String),
}

impl HomError {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        HomError::Parse { line, msg: msg.into() }
    }

    pub fn is_budget(&self) -> bool {
        matches!(self, HomError::Budget(_))
    }
}

pub type Result<T> = std::result::Result<T, HomError>;
