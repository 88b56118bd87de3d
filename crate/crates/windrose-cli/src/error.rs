use std::fmt;

/// CLI failures, split by exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 1: the input describes an invalid rose or configuration.
    Validation(String),
    /// Exit 2: unreadable, unparsable, or unwritable input/output.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Io(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Validation(msg) | CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}
