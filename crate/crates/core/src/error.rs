use thiserror::Error;

/// Errors produced by the estimators and the special-function kernel.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// An iterative routine failed to converge or lost its bracket.
    #[error("numerical failure: {0}")]
    NumericalFailure(String),
    /// A method identifier that is not recognized.
    #[error("unknown method `{0}` (expected exact, standard or discrete[:k])")]
    UnknownMethod(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::NumericalFailure(msg.into())
    }

    /// True for errors caused by bad input rather than failed numerics.
    pub fn is_usage(&self) -> bool {
        !matches!(self, Error::NumericalFailure(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
