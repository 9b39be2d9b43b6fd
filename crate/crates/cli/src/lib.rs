//! Library half of the `cocycle` command-line tool: JSON and CSV formats,
//! golden-fixture matching, and the per-cell computation engine.  The binary
//! in `main.rs` is a thin argument-parsing shell over this.

use std::fmt;

pub mod commands;
pub mod engine;
pub mod fixture;
pub mod formats;

/// Errors surfaced to the command line with exit code 1.
#[derive(Debug)]
pub enum CliError {
    Core(cocycle_core::Error),
    Io(std::io::Error),
    Json(serde_json::Error),
    Invalid(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
            CliError::Json(e) => write!(f, "{e}"),
            CliError::Invalid(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<cocycle_core::Error> for CliError {
    fn from(e: cocycle_core::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Json(e)
    }
}

pub type CliResult<T> = Result<T, CliError>;

/// Exit codes are a stable contract: success, usage or parse failure,
/// verification mismatch.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;
