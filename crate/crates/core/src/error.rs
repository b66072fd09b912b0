use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A representation would exceed the configured dimension cap.
    #[error("resource error: dimension {dim} exceeds cap {cap}")]
    Resource { dim: u128, cap: usize },
    /// Unknown preset or malformed configuration.
    #[error("configuration error: {0}")]
    Config(String),
}

impl Error {
    pub fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
