//! Flat `key = value` experiment files.
//!
//! Keys are flag names without the leading dashes (`lambda-grid`, or
//! `lambda_grid`). The reserved key `command` names the subcommand. Lines
//! starting with `#` and blank lines are ignored.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConfigError {
    #[error("line {line}: expected key = value")]
    MissingEquals { line: usize },
    #[error("line {line}: invalid key `{key}`")]
    BadKey { line: usize, key: String },
    #[error("line {line}: empty value for `{key}`")]
    EmptyValue { line: usize, key: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ExperimentFile {
    pub command: Option<String>,
    /// Remaining entries in file order, keys normalized to dashes.
    pub entries: Vec<(String, String)>,
}

impl ExperimentFile {
    /// The entries as `--key=value` tokens.
    pub fn tokens(&self) -> Vec<String> {
        self.entries.iter().map(|(k, v)| format!("--{k}={v}")).collect()
    }
}

pub fn parse_config(text: &str) -> Result<ExperimentFile, ConfigError> {
    let mut file = ExperimentFile::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let (key, value) = trimmed.split_once('=').ok_or(ConfigError::MissingEquals { line })?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        let valid =
            !key.is_empty() && !key.starts_with('-') && key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-');
        if !valid {
            return Err(ConfigError::BadKey { line, key });
        }
        if value.is_empty() {
            return Err(ConfigError::EmptyValue { line, key });
        }
        if key == "command" {
            file.command = Some(value.to_string());
        } else {
            file.entries.push((key, value.to_string()));
        }
    }
    Ok(file)
}
