use std::fmt;
use std::io;

/// Failure of a command, carrying the process exit code it maps to.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, malformed input or an I/O failure. Exit code 1.
    Usage(String),
    /// A computed deviation exceeded the tolerance. Exit code 2.
    Tolerance(String),
    /// The request needs more than the dense simulator allows. Exit code 3.
    Refusal(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 1,
            CliError::Tolerance(_) => 2,
            CliError::Refusal(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "error: {m}"),
            CliError::Tolerance(m) => write!(f, "tolerance violation: {m}"),
            CliError::Refusal(m) => write!(f, "refused: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<seqgme::Error> for CliError {
    fn from(e: seqgme::Error) -> Self {
        match e {
            seqgme::Error::DenseCapExceeded { .. } => CliError::Refusal(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
