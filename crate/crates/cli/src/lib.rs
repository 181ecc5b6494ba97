//! Command-line front end: argument parsing, commands and verification
//! suites. `main.rs` only maps results to output and exit codes.

pub mod args;
pub mod commands;
pub mod manifest;
pub mod verify;

use std::io::Write;
use std::time::Instant;

use serde::Serialize;

use args::{Cli, Command, OutputArgs};
use manifest::{Envelope, RunManifest};

/// Exit status 1: a verification ran and failed.
pub const EXIT_FAILURE: i32 = 1;
/// Exit status 2: bad flags, unparseable input or unsupported sizes.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => EXIT_FAILURE,
            CliError::Usage(_) | CliError::Io(_) => EXIT_USAGE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => f.write_str(m),
            CliError::Io(e) => write!(f, "i/o error: {e}"),
        }
    }
}

impl From<bellstruct::Error> for CliError {
    fn from(e: bellstruct::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

fn write_output(out: &OutputArgs, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn emit<T: Serialize>(cli: &Cli, name: &str, seed: Option<u64>, started: Instant, out: &OutputArgs, result: &T) -> Result<(), CliError> {
    let flags = serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null);
    let manifest = RunManifest::new(name, flags, seed, started);
    let mut text = serde_json::to_string_pretty(&Envelope {
        manifest: &manifest,
        result,
    })
    .map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    write_output(out, &text)
}

/// Runs one invocation, writing its output. Verification failures are
/// reported after the output has been written.
pub fn run(cli: &Cli) -> Result<(), CliError> {
    let started = Instant::now();
    match &cli.command {
        Command::Bound(a) => emit(cli, "bound", None, started, &a.output, &commands::bound(a)?),
        Command::Eval(a) => emit(cli, "eval", None, started, &a.output, &commands::eval(a)?),
        Command::Table1(a) => {
            let rows = commands::table1_rows(a)?;
            let flags = serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null);
            let manifest = RunManifest::new("table1", flags, Some(a.search.seed), started);
            let header = serde_json::to_string(&manifest).map_err(|e| CliError::Usage(e.to_string()))?;
            write_output(&a.output, &format!("# {header}\n{}", commands::table1_csv(&rows)))
        }
        Command::Verify(a) => {
            let report = verify::run(a.target, &a.search)?;
            emit(cli, "verify", Some(a.search.seed), started, &a.output, &report)?;
            let failed: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(CliError::Failure(format!("failed checks: {}", failed.join("; "))))
            }
        }
        Command::Facets(a) => emit(cli, "facets", None, started, &a.output, &commands::facets(a)?),
    }
}

/// Sizes the global thread pool from `BELLSTRUCT_THREADS` when set.
pub fn configure_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var("BELLSTRUCT_THREADS") else {
        return Ok(());
    };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| CliError::Usage(format!("BELLSTRUCT_THREADS must be a positive integer, got {value:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}
