use thiserror::Error;

/// Errors raised by the oscillatory operators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An input violates the operation's preconditions.
    #[error("invalid argument: {0}")]
    Argument(String),
    /// A hyperbolic evaluation would overflow double precision.
    #[error("range error: {0}")]
    Range(String),
    /// An iterative reference computation failed to converge.
    #[error("no convergence: {0}")]
    Convergence(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn argument<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
