use thiserror::Error;

use crate::coeff::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    /// A rational-function coefficient has a pole at the requested point.
    #[error("pole at evaluation point {0}")]
    PoleAtEvaluation(Rational),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidArgument(msg.into()))
}
