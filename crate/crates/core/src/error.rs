use thiserror::Error;

/// Errors raised for malformed inputs. Failed axioms are not errors: they
/// are reported as verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("input error: {0}")]
    Input(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn shape(msg: impl Into<String>) -> Self {
        Error::Shape(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
