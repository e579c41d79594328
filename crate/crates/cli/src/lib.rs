//! Batch front end for `spiked-core`: parses a command line (optionally
//! seeded from a `key = value` file), runs one experiment and writes its
//! table as CSV or JSON.
//!
//! Exit codes: 0 on success, 2 for invalid input, 3 when a computation on
//! valid input fails or a result is not finite.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod args;
mod commands;
pub mod config;
pub mod error;
pub mod grid;
pub mod table;

use std::ffi::OsString;
use std::fs;
use std::io::Write;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::Cli;
pub use error::{CliError, EXIT_NUMERICAL, EXIT_OK, EXIT_VALIDATION};
pub use table::{emit_table, Cell, Format, Table};

use config::parse_config;

/// Splits `--config PATH` / `--config=PATH` out of `argv`.
fn take_config_path(argv: &mut Vec<String>) -> Result<Option<String>, CliError> {
    let mut path = None;
    let mut k = 1;
    while k < argv.len() {
        if argv[k] == "--config" {
            if k + 1 >= argv.len() {
                return Err(CliError::Invalid("--config needs a path".into()));
            }
            path = Some(argv.remove(k + 1));
            argv.remove(k);
        } else if let Some(p) = argv[k].strip_prefix("--config=") {
            path = Some(p.to_string());
            argv.remove(k);
        } else if argv[k] == "--" {
            break;
        } else {
            k += 1;
        }
    }
    Ok(path)
}

/// Merges a config file's contents into `argv` given its text.
///
/// The file's entries are inserted right after the subcommand, so any flag
/// repeated on the command line overrides them. When `argv` names no
/// subcommand the file's `command` entry supplies it.
pub fn merge_config_text(mut argv: Vec<String>, path: &str, text: &str) -> Result<Vec<String>, CliError> {
    let file = parse_config(text).map_err(|source| CliError::Config {
        path: path.to_string(),
        source,
    })?;
    if argv.is_empty() {
        argv.push("spiked".into());
    }
    let has_command = argv.get(1).is_some_and(|t| !t.starts_with('-'));
    if !has_command {
        match &file.command {
            Some(c) => argv.insert(1, c.clone()),
            None => {
                return Err(CliError::Invalid(format!(
                    "{path}: no subcommand given and no `command` entry"
                )))
            }
        }
    } else if let Some(c) = &file.command {
        if *c != argv[1] {
            return Err(CliError::Invalid(format!(
                "{path}: file is for `{c}` but the command line asks for `{}`",
                argv[1]
            )));
        }
    }
    let tail = argv.split_off(2);
    argv.extend(file.tokens());
    argv.extend(tail);
    Ok(argv)
}

/// Expands `--config` and parses the resulting tokens.
pub fn parse_args(argv: Vec<String>) -> Result<Cli, CliError> {
    let mut argv = argv;
    let argv = match take_config_path(&mut argv)? {
        Some(path) => {
            let text = fs::read_to_string(&path).map_err(|source| CliError::ConfigRead {
                path: path.clone(),
                source,
            })?;
            merge_config_text(argv, &path, &text)?
        }
        None => argv,
    };
    parse_tokens(argv)
}

/// Parses already-expanded tokens; `tokens[0]` is the program name.
pub fn parse_tokens<I, T>(tokens: I) -> Result<Cli, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    Ok(Cli::try_parse_from(tokens)?)
}

/// Runs one invocation, writing the table (when no `--output` is given) to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run_with(argv: Vec<String>, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match parse_args(argv) {
        Ok(cli) => cli,
        Err(CliError::Usage(e)) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
        Err(CliError::Usage(e)) => {
            let _ = write!(err, "{}", e.render());
            return EXIT_VALIDATION;
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return e.exit_code();
        }
    };
    let result = commands::execute(&cli.command).and_then(|t| emit_table(&t, cli.format, cli.output.as_deref(), out));
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {}: {e}", cli.command.name());
            e.exit_code()
        }
    }
}

/// Runs against the process's standard streams.
pub fn run<I>(argv: I) -> i32
where
    I: IntoIterator<Item = String>,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(argv.into_iter().collect(), &mut stdout.lock(), &mut stderr.lock())
}

/// Parses and runs, returning the table instead of writing it.
pub fn compute(argv: Vec<String>) -> Result<Table, CliError> {
    let cli = parse_args(argv)?;
    commands::execute(&cli.command)
}
