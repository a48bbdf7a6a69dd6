//! `k3p`: certified computations for quartic K3 surfaces from the command
//! line.
//!
//! Exit codes: 0 for a successful or conclusive run, 1 for a negative or
//! inconclusive result, 2 for usage, input or data errors.

mod commands;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "k3p", version, about = "Certified periods, Noether-Lefschetz bounds and Picard membership for quartic K3 surfaces")]
pub struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256)]
    pub precision: u32,
    /// Truncation order of series expansions.
    #[arg(long, global = true, default_value_t = 64)]
    pub order: usize,
    /// Allow an artificially small constant c; verdicts are then not proofs.
    #[arg(long, global = true)]
    pub test_mode: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a quartic defines a smooth surface.
    Smoothness {
        /// Quartic in polynomial JSON format.
        quartic: PathBuf,
    },
    /// Assemble the separation constants and write a constants cache.
    Constants {
        #[command(flatten)]
        inputs: PeriodInputs,
        #[command(flatten)]
        field: FieldArgs,
        /// Where to write the cache; printed to stdout otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether an integral class lies in the Picard group.
    Decide {
        /// Comma-separated coordinates of the class, or `h`.
        #[arg(long, allow_hyphen_values = true)]
        gamma: String,
        /// Lattice in JSON format.
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long)]
        quartic: Option<PathBuf>,
        #[arg(long)]
        periods: Option<PathBuf>,
        /// Constants cache written by `constants`; assembled when absent.
        #[arg(long)]
        constants: Option<PathBuf>,
        #[command(flatten)]
        field: FieldArgs,
    },
    /// Table of degree and height bounds for Noether-Lefschetz loci.
    NlBound {
        #[arg(long, conflicts_with_all = ["from", "to"])]
        delta: Option<i64>,
        #[arg(long, default_value_t = 1)]
        from: i64,
        #[arg(long, default_value_t = 32)]
        to: i64,
    },
    /// Theta-series upper bound on the degree of a Noether-Lefschetz locus.
    MpDegree {
        #[arg(long)]
        delta: usize,
    },
    /// Check a Liouville divisor chain and print its partial sum.
    Liouville {
        /// One entry per line: an integer, or `log2:<v>` / `log2log2:<v>`.
        file: PathBuf,
        /// Skip the growth condition.
        #[arg(long)]
        divisor_only: bool,
    },
}

#[derive(Args, Debug)]
pub struct PeriodInputs {
    #[arg(long)]
    pub quartic: PathBuf,
    #[arg(long)]
    pub lattice: PathBuf,
    #[arg(long)]
    pub periods: PathBuf,
}

#[derive(Args, Debug)]
pub struct FieldArgs {
    /// Degree of the coefficient field.
    #[arg(long)]
    pub degree: Option<u32>,
    /// Absolute logarithmic height of the coefficients.
    #[arg(long)]
    pub height: Option<f64>,
    /// `log₂c` override, honoured only with `--test-mode`.
    #[arg(long, allow_hyphen_values = true)]
    pub test_log2_c: Option<f64>,
}

/// Outcome of a command, mapped onto the exit code.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(Outcome::Success) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
