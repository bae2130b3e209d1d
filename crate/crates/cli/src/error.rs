use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
/// A conjectured inequality or checked claim failed: a finding, not a malfunction.
pub const EXIT_VIOLATED: i32 = 2;
pub const EXIT_CAP: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// A parse error inside a named input file.
    #[error("{path}:{line}: {message}")]
    ParseFile { path: String, line: usize, message: String },

    #[error(transparent)]
    Core(#[from] kneser_core::Error),

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        CliError::Parse {
            line,
            message: message.into(),
        }
    }

    pub fn line(&self) -> Option<usize> {
        match self {
            CliError::Parse { line, .. } | CliError::ParseFile { line, .. } => Some(*line),
            _ => None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_cap() => EXIT_CAP,
            _ => EXIT_ERROR,
        }
    }
}
