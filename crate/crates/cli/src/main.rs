//! `u21zeta`: batch front end for classification, coefficient evaluation,
//! zeta integrals, invariant suites and parameter tables.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 internal error.

mod commands;
mod config;
mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use thiserror::Error;

use u21zeta::suites::Suite;

use config::Settings;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("internal error: {0}")]
    Internal(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Io { .. } | CliError::Internal(_) => 3,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "u21zeta", version, about = "Discrete-series matrix coefficients and local zeta integrals for U(2,1)")]
struct Cli {
    /// TOML file with default settings; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(flatten)]
    settings: Settings,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chamber, Blattner parameter, formal degree and dual-pair case of --lambda.
    Classify,
    /// Discrete-series coefficient at (k, a_t, k') for --lambda.
    CoeffDs,
    /// Normalized Weil-representation coefficient of a case's harmonic.
    CoeffWeil,
    /// Exact and numerical zeta integral for a case or --lambda.
    Zeta,
    /// Run an invariant suite; exit code 1 if any check fails.
    Verify {
        /// identities, ode, harmonics, zeta, theorem1 or oracle.
        #[arg(value_parser = parse_suite)]
        suite: Suite,
    },
    /// Exact values over a parameter grid; ranges like --alpha 0..8.
    Table,
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse()
}

fn run(cli: Cli) -> Result<output::Report, CliError> {
    let file = match &cli.config {
        Some(p) => Settings::load(p)?,
        None => Settings::default(),
    };
    let s = cli.settings.over(file);
    let report = match cli.command {
        Command::Classify => commands::classify(&s)?,
        Command::CoeffDs => commands::coeff_ds(&s)?,
        Command::CoeffWeil => commands::coeff_weil(&s)?,
        Command::Zeta => commands::zeta(&s)?,
        Command::Verify { suite } => commands::verify(&s, suite)?,
        Command::Table => commands::table(&s)?,
    };
    let text = report.render(s.format());
    match &s.out {
        Some(path) => std::fs::write(path, text).map_err(|source| CliError::Io { path: path.clone(), source })?,
        None => {
            let mut out = std::io::stdout().lock();
            // A closed pipe is not worth an error code.
            let _ = out.write_all(text.as_bytes());
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(report)) => match report.passed {
            Some(false) => ExitCode::from(1),
            _ => ExitCode::SUCCESS,
        },
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
        Err(_) => ExitCode::from(3),
    }
}
