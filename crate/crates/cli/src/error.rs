use thiserror::Error;

use crate::config::ConfigError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Usage(#[from] clap::Error),

    #[error("{path}: {source}")]
    Config { path: String, source: ConfigError },

    #[error("cannot read {path}: {source}")]
    ConfigRead { path: String, source: std::io::Error },

    #[error("{0}")]
    Invalid(String),

    #[error(transparent)]
    Core(#[from] spiked_core::Error),

    #[error("column `{column}` row {row} is not finite ({value})")]
    NonFinite {
        column: &'static str,
        row: usize,
        value: f64,
    },

    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Config { .. } | CliError::ConfigRead { .. } | CliError::Invalid(_) => {
                EXIT_VALIDATION
            }
            CliError::Core(e) if e.is_validation() => EXIT_VALIDATION,
            CliError::Core(_) | CliError::NonFinite { .. } | CliError::Io { .. } => EXIT_NUMERICAL,
        }
    }
}
