use std::fmt;

/// Process-level failure. The variant fixes the exit code: rejected input 2,
/// broken numerical guarantee 3, environment trouble 1.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Numerical(String),
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config: {msg}"),
            CliError::Numerical(msg) => write!(f, "numerical: {msg}"),
            CliError::Io(msg) => write!(f, "io: {msg}"),
        }
    }
}

impl From<pulsegate_core::Error> for CliError {
    fn from(err: pulsegate_core::Error) -> Self {
        // Invariant violations surface as exit 3; everything else the user
        // can fix in the scenario file.
        if err.is_numerical() {
            CliError::Numerical(err.to_string())
        } else {
            CliError::Config(err.to_string())
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
