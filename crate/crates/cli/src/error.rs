use std::fmt;

/// Exit codes of the `envspec` binary.
pub mod exit {
    pub const CLEAN: i32 = 0;
    pub const IO: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const ASYMMETRY: i32 = 3;
    pub const INCONCLUSIVE: i32 = 4;
}

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters that do not fit the data.
    Usage(String),
    /// Unreadable, unwritable or malformed files.
    Io(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => exit::USAGE,
            CliError::Io(_) => exit::IO,
        }
    }

    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<envspec::Error> for CliError {
    fn from(e: envspec::Error) -> Self {
        use envspec::Error::*;
        match e {
            Io { .. }
            | MalformedHeader { .. }
            | MalformedData { .. }
            | NonFiniteSample { .. }
            | LengthMismatch { .. }
            | RateMismatch { .. } => CliError::Io(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
