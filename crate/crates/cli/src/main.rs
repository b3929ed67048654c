//! Command-line front end: expand series, verify the identity registry, run
//! the partition oracles and the asymptotic checks.
//!
//! Exit status: 0 when everything selected passes, 1 when a check fails,
//! 2 on usage, parse or domain errors.

mod asympt;
mod expand;
mod output;
mod partitions;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(
    name = "qdissect",
    version,
    about = "Exact q-series identities, partition oracles and q -> 1 asymptotics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Text,
    /// Newline-delimited JSON, one record per report.
    Json,
}

#[derive(clap::Args, Clone, Debug)]
pub struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Expand a named series or a JSON sum spec.
    Expand(expand::Args),
    /// Verify registry identities exactly through q^prec.
    Verify(verify::Args),
    /// Ratio checks of q-series against their q -> 1 predictions.
    Asympt(asympt::Args),
    /// Compare generating functions with brute-force partition counts.
    Partitions(partitions::Args),
}

/// A failure that maps onto an exit status.
#[derive(Debug)]
pub enum Failure {
    /// Bad input: exit 2.
    Usage(String),
    /// I/O trouble writing results: exit 2.
    Io(std::io::Error),
}

impl From<qdissect::Error> for Failure {
    fn from(e: qdissect::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Whether every selected check passed.
pub type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Expand(a) => expand::run(a),
        Command::Verify(a) => verify::run(a),
        Command::Asympt(a) => asympt::run(a),
        Command::Partitions(a) => partitions::run(a),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("qdissect: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("qdissect: {e}");
            ExitCode::from(2)
        }
    }
}
