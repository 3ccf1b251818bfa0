//! Experiment orchestration around the `acr` library: config parsing,
//! batch runs with CSV output, landscape queries, the verification check
//! battery and plot-script generation.

pub mod config;
pub mod experiment;
pub mod plot;
pub mod report;
pub mod verify;

use std::fmt;

/// CLI-level errors, mapped onto process exit codes.
#[derive(Debug)]
pub enum CliError {
    /// Malformed or invalid configuration / input schema (exit code 2).
    Config(String),
    /// Filesystem failures (exit code 3).
    Io(String),
    /// One or more verification checks failed (exit code 1).
    ChecksFailed(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }

    pub fn io(context: &str, err: std::io::Error) -> Self {
        CliError::Io(format!("{context}: {err}"))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msg) => write!(f, "config error: {msg}"),
            CliError::Io(msg) => write!(f, "io error: {msg}"),
            CliError::ChecksFailed(n) => write!(f, "{n} verification check(s) failed"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<acr::Error> for CliError {
    fn from(err: acr::Error) -> Self {
        CliError::Config(err.to_string())
    }
}
