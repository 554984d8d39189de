//! `holodd`: verify holonomic gates, sweep pulse errors, probe decoupling.
//!
//! Exit codes: 0 success, 1 a check failed, 2 invalid configuration,
//! 3 file or stream IO error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::VerifyOptions;
use config::{Overrides, RunConfig};

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Io(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Config(_) => 2,
            CliError::Io(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(name = "holodd", version, about = "Holonomic gates in decoherence-free subspaces under dynamical decoupling")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check gate action, leakage, commutant membership and holonomy
    Verify {
        #[command(flatten)]
        overrides: Overrides,
        /// Load the schedule from JSON instead of --gate
        #[arg(long, value_name = "FILE")]
        schedule: Option<PathBuf>,
        /// Write the schedule as JSON
        #[arg(long, value_name = "FILE")]
        emit_schedule: Option<PathBuf>,
        /// Print the logical basis before the checks
        #[arg(long)]
        dump_basis: bool,
    },
    /// Gate fidelity over flip-angle and detuning error grids, as CSV
    Sweep {
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Error of repeated XY-4 cycles against dt and the fitted order
    Decouple {
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn run(cli: Cli) -> Result<bool, CliError> {
    match cli.command {
        Command::Verify {
            overrides,
            schedule,
            emit_schedule,
            dump_basis,
        } => commands::verify(
            &RunConfig::resolve(&overrides)?,
            &VerifyOptions {
                schedule,
                emit_schedule,
                dump_basis,
            },
        ),
        Command::Sweep { overrides } => commands::sweep(&RunConfig::resolve(&overrides)?),
        Command::Decouple { overrides } => commands::decouple(&RunConfig::resolve(&overrides)?),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            match &e {
                CliError::Config(m) => eprintln!("invalid configuration: {m}"),
                CliError::Io(m) => eprintln!("io error: {m}"),
            }
            ExitCode::from(e.code())
        }
    }
}
