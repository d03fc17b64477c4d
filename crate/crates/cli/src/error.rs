use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input; `line` and `column` are 1-based.
    #[error("{line}:{column}: {message}")]
    Spec { line: usize, column: usize, message: String },

    #[error("{0}")]
    Io(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] pqn_core::Error),
}

impl CliError {
    /// `1` when a structure failed a check, `2` for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(pqn_core::Error::InvalidStructure { .. }) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
