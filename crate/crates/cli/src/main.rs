use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use qspace::statistics::{StatisticsKind, DEFAULT_ENUMERATION_CAP};
use qspace::ParticleKind;
use serde::de::DeserializeOwned;

mod checks;
mod qset;
mod state;
mod stats;

const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "qspace", version, about = "Occupation-number states built on quasi-sets, with exact checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count and list microstates for MB, BE or FD statistics.
    Stats(stats::StatsArgs),
    /// Work with state files: build, inner product, norm, ladder operators.
    #[command(subcommand)]
    State(state::StateCommand),
    /// Sweep every (anti)commutation relation over small basis states.
    CheckCommutators(checks::CommutatorArgs),
    /// Compare the inner product against independent oracles.
    CheckOracle(checks::OracleArgs),
    /// Show that permuting indistinguishable atoms changes nothing.
    DemoPermutation(checks::PermutationArgs),
    /// Inspect q-sets and apply kernel operations.
    #[command(subcommand)]
    Qset(qset::QsetCommand),
}

/// What a command concluded, independent of how it printed it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    CheckFailed,
}

#[derive(Debug, Clone, Args)]
pub struct OutputArgs {
    /// Print machine-readable JSON instead of plain text.
    #[arg(long)]
    pub json: bool,
}

pub fn parse_kind(s: &str) -> Result<ParticleKind, String> {
    s.parse::<ParticleKind>().map_err(|e| e.to_string())
}

pub fn parse_statistics(s: &str) -> Result<StatisticsKind, String> {
    s.parse::<StatisticsKind>().map_err(|e| e.to_string())
}

pub fn parse_tolerance(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(t) if t > 0.0 && t.is_finite() => Ok(t),
        Ok(_) => Err("tolerance must be a positive finite number".into()),
        Err(e) => Err(e.to_string()),
    }
}

pub fn default_cap() -> u64 {
    DEFAULT_ENUMERATION_CAP
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

/// Writes JSON to `out` when given, otherwise to stdout.
pub fn write_json<T: serde::Serialize>(value: &T, out: Option<&PathBuf>) -> Result<()> {
    let text = serde_json::to_string(value)?;
    match out {
        Some(path) => fs::write(path, format!("{text}\n")).with_context(|| format!("writing {}", path.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<Outcome> {
    match cli.command {
        Command::Stats(args) => stats::run(args),
        Command::State(cmd) => state::run(cmd),
        Command::CheckCommutators(args) => checks::commutators(args),
        Command::CheckOracle(args) => checks::oracle(args),
        Command::DemoPermutation(args) => checks::permutation(args),
        Command::Qset(cmd) => qset::run(cmd),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::CheckFailed) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
