use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed or mismatched input.
    #[error("input error: {0}")]
    Input(String),
    /// The requested computation is outside the supported family.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Two independent computations disagreed, or an invariant that should be impossible to break was broken.
    #[error("inconsistency: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Input(_) => 1,
            Error::Unsupported(_) => 2,
            Error::Inconsistency(_) => 3,
        }
    }
}
