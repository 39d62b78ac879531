use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
#[non_exhaustive]
pub enum Error {
    /// A precondition on the input was violated.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A configurable resource budget ran out before the computation finished.
    #[error("budget exhausted: {0}")]
    BudgetExhausted(String),

    /// Malformed graph6 data.
    #[error("graph6: {0}")]
    Graph6(String),

    /// Malformed JSON graph data.
    #[error("json graph: {0}")]
    JsonGraph(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub fn budget(msg: impl Into<String>) -> Self {
        Error::BudgetExhausted(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
