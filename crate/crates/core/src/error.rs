use thiserror::Error;

/// Errors raised by the arrangement library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid modulus {0}: q must be at least 1")]
    InvalidModulus(u64),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("invalid subset: {0}")]
    InvalidSubset(String),
    #[error("resource limit exceeded: {what} needs {needed}, cap is {cap}")]
    ResourceLimit {
        what: &'static str,
        needed: String,
        cap: u64,
    },
    #[error("invalid comparison: {0}")]
    InvalidComparison(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn resource(what: &'static str, needed: impl ToString, cap: u64) -> Self {
        Error::ResourceLimit {
            what,
            needed: needed.to_string(),
            cap,
        }
    }

    pub(crate) fn overflow(what: &'static str) -> Self {
        Error::ResourceLimit {
            what,
            needed: "a value beyond 64 bits".to_string(),
            cap: u64::MAX,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
