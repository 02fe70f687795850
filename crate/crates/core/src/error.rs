use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or out-of-range input.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A numeric argument lies outside the domain of the formula.
    #[error("domain error: {0}")]
    Domain(String),
    /// The pattern uses a face of probability zero, so it never occurs.
    #[error("unreachable pattern: face {face} has probability zero")]
    Unreachable { face: u32 },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
