//! The `epiworks` command line: argument parsing, command dispatch and
//! report rendering. `main` is a thin wrapper around [`run`].
//!
//! Exit codes: 0 success, 1 the checked property fails (a separating
//! assignment, an invalid deduction, no degree witness), 2 input error,
//! 3 resource guard.

mod args;
mod commands;
pub mod report;

pub use args::{Cli, Command};

use epiworks_core::model::CheckConfig;
use report::{Envelope, ErrorReport, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PROPERTY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    Input(String),
    Guard(String),
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(cli: &Cli) -> Outcome {
    let config = CheckConfig { max_assignments: cli.bound };
    let (report, code) = match commands::execute(&cli.command, &config) {
        Ok(done) => done,
        Err(e) => {
            let (kind, message, code) = match e {
                CliError::Input(m) => ("input", m, EXIT_INPUT),
                CliError::Guard(m) => ("resource-guard", m, EXIT_GUARD),
            };
            (Report::Error(ErrorReport { kind: kind.into(), message }), code)
        }
    };
    let text = report.render();
    let is_error = matches!(report, Report::Error(_));
    let stdout = if cli.json {
        Envelope::new(report).to_json()
    } else if is_error {
        String::new()
    } else {
        text.clone()
    };
    let stderr = if is_error { text } else { String::new() };
    Outcome { code, stdout, stderr }
}
