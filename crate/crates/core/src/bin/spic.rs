//! Command-line front end: parse a problem file, run its queries, print the
//! human-readable report, and optionally write the machine-readable one.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use spic_core::problem::parse_problem;
use spic_core::report::render_human;
use spic_core::runner::{exit_status, run, RunOptions};

/// Exact spectral invariants of commuting operator tuples on algebraic models.
#[derive(Parser)]
#[command(name = "spic", version)]
struct Cli {
    /// Problem file to execute.
    file: PathBuf,

    /// Write the machine-readable JSON report to this path.
    #[arg(long, value_name = "OUT")]
    json: Option<PathBuf>,

    /// Run only the `verify` queries in the file.
    #[arg(long)]
    verify_only: bool,

    /// Budget for generic-sample searches per component.
    #[arg(long, value_name = "N")]
    sample_budget: Option<usize>,

    /// Thickening bound for stabilized dimension counts.
    #[arg(long, value_name = "N")]
    max_k: Option<usize>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();

    let text = match fs::read_to_string(&cli.file) {
        Ok(text) => text,
        Err(err) => {
            eprintln!("error: cannot read {}: {}", cli.file.display(), err);
            return ExitCode::from(1);
        }
    };
    let file = match parse_problem(&text) {
        Ok(file) => file,
        Err(err) => {
            eprintln!("error: {}: {}", cli.file.display(), err);
            return ExitCode::from(1);
        }
    };

    let mut opts = RunOptions {
        verify_only: cli.verify_only,
        ..RunOptions::default()
    };
    if let Some(budget) = cli.sample_budget {
        opts.sample_budget = budget;
    }
    if let Some(max_k) = cli.max_k {
        opts.max_k = max_k;
    }
    if let Ok(seed) = std::env::var("SPIC_SEED") {
        match seed.trim().parse::<usize>() {
            Ok(offset) => opts.seed = offset,
            Err(_) => {
                eprintln!("error: SPIC_SEED must be a non-negative integer, got {:?}", seed);
                return ExitCode::from(1);
            }
        }
    }

    let report = run(&file, &opts);
    print!("{}", render_human(&report));
    if let Some(path) = &cli.json {
        if let Err(err) = fs::write(path, report.to_json()) {
            eprintln!("error: cannot write {}: {}", path.display(), err);
            return ExitCode::from(1);
        }
    }
    ExitCode::from(exit_status(&report) as u8)
}
