use std::fmt;

/// Failure classes with their process exit codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad input or a failed check; exit code 1.
    Validation(String),
    /// Unreadable config or unwritable output; exit code 2.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }

    pub fn invalid(msg: impl Into<String>) -> Self {
        CliError::Validation(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(m) => write!(f, "{m}"),
            CliError::Io(m) => write!(f, "I/O error: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<qfridge_core::Error> for CliError {
    fn from(e: qfridge_core::Error) -> Self {
        CliError::Validation(e.to_string())
    }
}
