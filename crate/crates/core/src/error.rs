use thiserror::Error;

/// Failure classes shared by every operation in the crate.
///
/// The variants map one-to-one onto the workbench exit codes: input and
/// precondition problems are the caller's fault, invariant failures mean a
/// constructive guarantee did not hold (a bug), and resource errors mean a
/// configured cap or deadline was hit.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant failed: {0}")]
    Invariant(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub fn invariant(msg: impl Into<String>) -> Self {
        Error::Invariant(msg.into())
    }

    pub fn resource(msg: impl Into<String>) -> Self {
        Error::Resource(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
