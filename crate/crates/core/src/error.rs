use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("contract violation: {0}")]
    ContractViolation(String),

    #[error("unsupported degree {degree} (supported: {supported})")]
    UnsupportedDegree { degree: usize, supported: &'static str },

    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit { what: String, needed: f64, cap: f64 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("checkpoint rejected: {0}")]
    Checkpoint(String),

    #[error("run interrupted after {completed} of {total} shards; checkpoint saved")]
    Interrupted { completed: usize, total: usize },

    #[error(transparent)]
    Io(#[from] io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
