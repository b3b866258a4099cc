use thiserror::Error;

/// Errors raised by the engine. Each variant maps to a distinct CLI exit code.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied malformed or inconsistent input.
    #[error("usage error: {0}")]
    Usage(String),
    /// A mathematical precondition does not hold (zero vector, singular matrix, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The plane does not meet the nucleus plane and is outside the classified family.
    #[error("plane is disjoint from the nucleus plane: {0}")]
    OutOfFamily(String),
    /// No parameter assignment satisfies a representative's constraints.
    #[error("configuration error: {0}")]
    Configuration(String),
    /// A computation exceeded its memory budget.
    #[error("resource budget exceeded: {0}")]
    Resource(String),
    /// A verification check failed.
    #[error("verification failed: {0}")]
    Verification(String),
    /// An internal consistency check failed.
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

macro_rules! usage {
    ($($arg:tt)*) => { $crate::error::Error::Usage(format!($($arg)*)) };
}
macro_rules! domain {
    ($($arg:tt)*) => { $crate::error::Error::Domain(format!($($arg)*)) };
}
macro_rules! internal {
    ($($arg:tt)*) => { $crate::error::Error::Internal(format!($($arg)*)) };
}
pub(crate) use {domain, internal, usage};
