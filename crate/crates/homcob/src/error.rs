use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// Malformed input: unknown group, bad sign string, wrong arity.
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Enumeration would exceed a configured cap.
    #[error("limit exceeded: {0}")]
    Limit(String),
    /// A mathematical failure signal such as an uncancelled pole.
    #[error("{0}")]
    Math(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Invalid(msg.into()))
}

impl Error {
    pub fn is_math(&self) -> bool {
        matches!(self, Error::Math(_))
    }
}
