use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;
use svlab::{run, validate, Command, Overrides};

/// Exact reports on curves in projective varieties.
#[derive(Parser, Debug)]
#[command(name = "svlab", version)]
struct Args {
    /// One of: hilbert, position, weights, smt, unique, jensen, validate.
    command: String,
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Directory for report.json and the CSV ledgers.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Add the weighted inequality and per-zero Wronskian ledger to `smt`.
    #[arg(long)]
    deep: bool,
    #[arg(long)]
    seed: Option<u64>,
    /// Quadrature tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprintln!("usage: {}", e.to_string().lines().next().unwrap_or("invalid arguments"));
            return ExitCode::from(1);
        }
    };
    if args.command == "validate" {
        let diags = validate(&args.config);
        for d in &diags {
            println!("{d}");
        }
        return if diags.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) };
    }
    let Some(cmd) = Command::parse(&args.command) else {
        eprintln!("usage: unknown command {:?}", args.command);
        return ExitCode::from(1);
    };
    let Some(out) = args.out else {
        eprintln!("usage: --out is required for {}", cmd.name());
        return ExitCode::from(1);
    };
    let overrides = Overrides {
        deep: args.deep,
        seed: args.seed,
        tol: args.tol,
    };
    let outcome = run(cmd, &args.config, &out, &overrides);
    if let Some(reason) = &outcome.reason {
        eprintln!("{reason}");
    }
    ExitCode::from(outcome.exit_code as u8)
}
