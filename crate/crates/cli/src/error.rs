use powermap_spectra::Error as CoreError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("resource cap exceeded: {0}")]
    Resource(String),

    #[error("verification failed: {0}")]
    Mismatch(String),

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("internal fault: {0}")]
    Internal(String),
}

impl CliError {
    /// 0 pass, 1 verification mismatch, 2 invalid input, 3 resource cap.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) | CliError::Internal(_) => 1,
            CliError::Invalid(_) | CliError::Io { .. } => 2,
            CliError::Resource(_) => 3,
        }
    }

    pub fn io(path: impl Into<String>, source: std::io::Error) -> CliError {
        CliError::Io {
            path: path.into(),
            source,
        }
    }
}

impl From<CoreError> for CliError {
    fn from(e: CoreError) -> Self {
        match e {
            CoreError::OrderCap { .. } | CoreError::OracleCap(_) => {
                CliError::Resource(e.to_string())
            }
            CoreError::NotPrime(_)
            | CoreError::ZeroDegree
            | CoreError::NotCoprime { .. }
            | CoreError::BadModulus(_)
            | CoreError::InvalidSpectrum(_) => CliError::Invalid(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
