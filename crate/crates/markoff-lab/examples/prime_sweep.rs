//! Drive a prime sweep through the same machinery as the `markoff-lab`
//! binary: build a job, run it in parallel, and verify a rerun against
//! the first output (timing fields excluded).
//!
//! Run with: cargo run --example prime_sweep

use std::fs;
use std::str::FromStr;

use markoff_lab::cli::{self, ExperimentKind, Format, SweepJob};

fn main() {
    let dir = std::env::temp_dir().join("markoff-lab-sweep-example");
    fs::create_dir_all(&dir).unwrap();
    let first = dir.join("markoff.jsonl");
    let second = dir.join("markoff-rerun.jsonl");

    let kind = ExperimentKind::from_str("markoff-components").unwrap();
    let moduli = cli::parse_moduli("5..31", kind).unwrap();
    let params = cli::parse_params("A=3,B=0").unwrap();
    let job = SweepJob::new(kind, moduli, params, 0).unwrap();

    let code = cli::run(&job, &first, Format::JsonLines, None).unwrap();
    println!("sweep over {} primes wrote {}, exit code {}", job.moduli.len(), first.display(), code);
    for line in fs::read_to_string(&first).unwrap().lines().take(3) {
        println!("  {line}");
    }

    cli::run(&job, &second, Format::JsonLines, Some(1)).unwrap();
    let outcome = cli::verify(&first, &second).unwrap();
    println!("rerun (single-threaded) verifies against the original: {}", outcome.matches);

    // CSV flattens component_sizes into a pipe-joined column
    let csv = dir.join("markoff.csv");
    cli::run(&job, &csv, Format::Csv, None).unwrap();
    let text = fs::read_to_string(&csv).unwrap();
    println!("\nCSV head:\n{}", text.lines().take(2).collect::<Vec<_>>().join("\n"));
}
