mod config;
mod error;
mod out;
mod run;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::error::CliError;
use crate::out::Format;

/// Schmidt-mode workbench for a frequency-converter pulse gate: seeds
/// squeezed states, drives the gate, and writes plot-ready tables.
#[derive(Parser)]
#[command(name = "pulsegate", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct RunArgs {
    /// Scenario file (JSON); defaults to the subcommand's built-in preset
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Directory for output artifacts (created as needed)
    #[arg(long, value_name = "DIR", default_value = "out")]
    out: PathBuf,
    /// Format for tabular artifacts
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Convert one Schmidt order away and tabulate what the gate leaves behind
    Block(RunArgs),
    /// Exchange two Schmidt orders with a full-swap gate
    Swap(RunArgs),
    /// Split the output spectrum into diagonal and interference parts
    Spectrum(RunArgs),
    /// Sweep the relative phase between two matched orders
    PhaseSweep(RunArgs),
    /// Sweep the gate angle and track the photon exchange
    ThetaSweep(RunArgs),
    /// Drive twin beams through the gate and track pair correlations
    Twin(RunArgs),
    /// Isolate one Schmidt order with a two-gate cascade
    Select(RunArgs),
    /// Factorize a two-photon transfer amplitude
    Jsa(RunArgs),
    /// Cross-check the moment engine against an exact Fock computation
    Oracle(RunArgs),
    /// Check a scenario file (or every built-in preset) without running
    Validate {
        /// Scenario file (JSON); omitted = every built-in preset
        #[arg(long, value_name = "PATH")]
        config: Option<PathBuf>,
    },
}

fn dispatch(command: &Command) -> Result<(), CliError> {
    match command {
        Command::Block(args) => run::gate_run("block", "fig1", args),
        Command::Swap(args) => run::gate_run("swap", "fig4", args),
        Command::Spectrum(args) => run::spectrum("fig2", args),
        Command::PhaseSweep(args) => run::sweep_phase("fig3", args),
        Command::ThetaSweep(args) => run::sweep_theta("fig2", args),
        Command::Twin(args) => run::twin("twin_swap", args),
        Command::Select(args) => run::select("select", args),
        Command::Jsa(args) => run::jsa("jsa", args),
        Command::Oracle(args) => run::oracle("oracle", args),
        Command::Validate { config } => run::validate(config.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code())
        }
    }
}
