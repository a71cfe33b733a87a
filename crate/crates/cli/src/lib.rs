//! Command-line driver: loads algebras and metrics, runs decompositions,
//! densities, certificates and verification batches, and writes canonical
//! JSON reports.

pub mod canonical;
pub mod checks;
pub mod commands;
pub mod config;
pub mod error;
pub mod inputs;

use std::ffi::OsString;

use clap::Parser;
use serde_json::json;

use crate::config::{Cli, RunConfig, SEED_ENV};
use crate::error::{CliError, EXIT_OK, EXIT_PRECONDITION};

/// Error report written in place of a result.
fn error_report(command: &str, e: &CliError, partial: Option<serde_json::Value>) -> serde_json::Value {
    json!({
        "command": command,
        "error": {"kind": e.kind, "message": e.message},
        "exit_code": e.code,
        "partial": partial,
    })
}

/// Runs the CLI on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, S>(args: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PRECONDITION } else { EXIT_OK };
        }
    };
    let output = cli.output.clone();
    let command = cli.command.name();
    let result = RunConfig::from_cli(cli, std::env::var(SEED_ENV).ok())
        .map_err(commands::Failure::from)
        .and_then(|cfg| commands::execute(&cfg));
    let (report, code) = match result {
        Ok(o) => (o.report, o.code),
        Err(f) => {
            eprintln!("orbitlab {command}: {}", f.error);
            (error_report(command, &f.error, f.partial), f.error.code)
        }
    };
    if let Err(e) = canonical::write_atomic(&output, &canonical::to_string(&report)) {
        eprintln!("orbitlab {command}: cannot write {}: {e}", output.display());
        return EXIT_PRECONDITION;
    }
    code
}
