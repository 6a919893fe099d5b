use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("rooted graph is not 2-connected")]
    NotRooted2Connected,
    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("no family exists")]
    NoFamily,
    #[error("generation failed: {0}")]
    Infeasible(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}

pub(crate) fn unmet(msg: impl Into<String>) -> Error {
    Error::HypothesisNotMet(msg.into())
}
