use thiserror::Error;

/// Errors raised by the invariant calculators and the classification pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("not a rational homology sphere: {0}")]
    NotRationalHomologySphere(String),

    #[error("unsupported degeneration: {0}")]
    UnsupportedDegeneration(String),

    #[error("degenerate surgery: {0}")]
    DegenerateSurgery(String),

    #[error("incomparable profiles: {0}")]
    IncomparableProfiles(String),

    #[error("routing error: {0}")]
    Routing(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for errors that signal a broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Internal(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
