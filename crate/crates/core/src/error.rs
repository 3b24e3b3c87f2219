use thiserror::Error;

/// Errors raised by the engine. Every variant carries a human-readable message
/// naming the offending datum.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("invalid character: {0}")]
    InvalidCharacter(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),
    #[error("unsupported input: {0}")]
    UnsupportedInput(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl Error {
    /// Stable machine-readable tag used in CLI error objects.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidBlock(_) => "invalid_block",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::InvalidCharacter(_) => "invalid_character",
            Error::InvalidInput(_) => "invalid_input",
            Error::UnsupportedParameter(_) => "unsupported_parameter",
            Error::UnsupportedInput(_) => "unsupported_input",
            Error::Precondition(_) => "precondition",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
