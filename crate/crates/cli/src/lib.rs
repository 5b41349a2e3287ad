//! The `girth` command line: single-mesh measurement, corpus annotation,
//! signature export and fixture generation.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod args;
mod batch;
mod commands;

use std::fmt;
use std::path::Path;

pub use args::{Cli, Command, FixtureArgs, FixtureShape, MeasureOptions, Normal};
pub use batch::{annotate_dir, discover_corpus, BatchFailure, BatchReport, CorpusEntry};
pub use commands::run;

/// A failure that ends the process, with the exit code it maps to.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

/// Bad flags, unreadable or malformed files.
pub const EXIT_INPUT: i32 = 1;
/// Well-formed input the pipeline could not measure.
pub const EXIT_GEOMETRY: i32 = 2;

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    /// Maps a library error, prefixing `context` (usually a path).
    pub fn from_core(err: girth::Error, context: Option<&Path>) -> Self {
        let code = if err.is_input_error() {
            EXIT_INPUT
        } else {
            EXIT_GEOMETRY
        };
        let message = match context {
            Some(path) => format!("{}: {err}", path.display()),
            None => err.to_string(),
        };
        Self { code, message }
    }

    fn io(path: &Path, action: &str, err: std::io::Error) -> Self {
        Self::input(format!("cannot {action} {}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl std::error::Error for CliError {}

pub(crate) fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, "read", e))
}

pub(crate) fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, "write", e))
}
