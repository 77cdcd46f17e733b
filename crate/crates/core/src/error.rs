use thiserror::Error;

/// Errors raised by the arithmetic, series and verification layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the named function.
    #[error("domain error in {function}: {detail}")]
    Domain { function: String, detail: String },

    #[error("division by zero: {0}")]
    DivisionByZero(String),

    /// Caller misuse: unknown names, out-of-range parameters, bad syntax.
    #[error("usage error: {0}")]
    Usage(String),

    #[error("resource limit: {0}")]
    Resource(String),

    /// A declared tail hypothesis was refuted by a computed term.
    #[error("tail hypothesis violated at n = {n}: {detail}")]
    TailHypothesisViolation { n: u64, detail: String },

    #[error("unknown identity id `{0}`")]
    UnknownIdentity(String),
}

impl Error {
    pub(crate) fn domain(function: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Domain {
            function: function.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn usage(detail: impl Into<String>) -> Self {
        Error::Usage(detail.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
