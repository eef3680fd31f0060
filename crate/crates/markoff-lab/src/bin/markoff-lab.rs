//! Thin wrapper over the `cli` module: `run` sweeps, `verify` baselines.

use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand};

use markoff_lab::cli::{self, ExperimentKind, Format, SweepJob};

#[derive(Parser)]
#[command(name = "markoff-lab", version, about = "Markoff-type solution graphs and recurrence value sets over F_p")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment sweep and write one record per modulus.
    Run {
        /// markoff-components | hurwitz-components | reduce-check |
        /// prop-suite | pisano-suite | fib-corollaries
        #[arg(long)]
        experiment: String,
        /// Inclusive range "5..97" or explicit list "5,7,11".
        #[arg(long)]
        primes: String,
        /// Experiment parameters, e.g. "A=3,B=0" or "n=4,a=4".
        #[arg(long, default_value = "")]
        params: String,
        /// Seed for the randomized suites; never wall-clock seeded.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file.
        #[arg(long)]
        out: PathBuf,
        /// json-lines | csv
        #[arg(long, default_value = "json-lines")]
        format: String,
        /// Worker threads (default: all cores).
        #[arg(long, env = "MARKOFF_LAB_THREADS")]
        threads: Option<usize>,
    },
    /// Compare a run against a stored baseline, ignoring timing fields.
    Verify {
        baseline: PathBuf,
        current: PathBuf,
    },
}

fn real_main() -> Result<i32, cli::CliError> {
    match Cli::parse().command {
        Command::Run { experiment, primes, params, seed, out, format, threads } => {
            let kind = ExperimentKind::from_str(&experiment)?;
            let moduli = cli::parse_moduli(&primes, kind)?;
            let params = cli::parse_params(&params)?;
            let job = SweepJob::new(kind, moduli, params, seed)?;
            let format = Format::from_str(&format)?;
            cli::run(&job, &out, format, threads)
        }
        Command::Verify { baseline, current } => {
            let outcome = cli::verify(&baseline, &current)?;
            if outcome.matches {
                println!("match");
                Ok(0)
            } else {
                eprintln!(
                    "divergence: {}",
                    outcome.first_divergence.unwrap_or_else(|| "unknown".into())
                );
                Ok(1)
            }
        }
    }
}

fn main() -> ExitCode {
    match real_main() {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
