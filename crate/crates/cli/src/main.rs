#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod config;
mod dispatch;
mod output;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use config::{Format, Kind};
use dispatch::{dispatch, CliError};

/// Solver and convergence studies for the delay subdiffusion equation.
#[derive(Parser)]
#[command(name = "l1delay", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one problem and write the per-step trace.
    Solve(RunArgs),
    /// Temporal convergence table, `h` fixed.
    StudyTime(RunArgs),
    /// Spatial convergence table, `N` fixed.
    StudySpace(RunArgs),
    /// Errors at the delay nodes `t = iτ`, `h` fixed.
    StudyDelayNodes(RunArgs),
    /// Complementary kernel identity and bounds.
    CheckKernel(RunArgs),
    /// Truncation error of the L1 operator along the manufactured time factor.
    CheckTruncation(RunArgs),
}

#[derive(Args)]
struct RunArgs {
    /// JSON configuration file, or `-` for stdin.
    #[arg(long)]
    config: String,
    /// Output path; defaults to the config's `output`, then `<kind>.<format>`.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Concurrent table rows; defaults to the available processors.
    #[arg(long)]
    threads: Option<usize>,
}

impl Command {
    fn split(self) -> (Kind, RunArgs) {
        match self {
            Command::Solve(a) => (Kind::Solve, a),
            Command::StudyTime(a) => (Kind::StudyTime, a),
            Command::StudySpace(a) => (Kind::StudySpace, a),
            Command::StudyDelayNodes(a) => (Kind::StudyDelayNodes, a),
            Command::CheckKernel(a) => (Kind::CheckKernel, a),
            Command::CheckTruncation(a) => (Kind::CheckTruncation, a),
        }
    }
}

fn read_config(path: &str) -> Result<String, CliError> {
    let read = if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map(|_| s)
    } else {
        std::fs::read_to_string(path)
    };
    read.map_err(|e| CliError::Config(format!("cannot read {path}: {e}")))
}

fn run(kind: Kind, args: RunArgs) -> Result<(), CliError> {
    let text = read_config(&args.config)?;
    let config = config::parse_config(&text, kind)?;
    let format = args.format.or(config.format).unwrap_or_default();
    let output = args
        .output
        .or_else(|| config.output.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("{kind}.{}", format.extension())));
    let threads = match args.threads {
        Some(0) => return Err(CliError::Config("--threads must be at least 1".into())),
        Some(t) => t,
        None => std::thread::available_parallelism().map_or(1, |n| n.get()),
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| CliError::Config(format!("thread pool: {e}")))?;

    let report = dispatch(&config, &output, format, &pool)?;
    println!("{report}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (kind, args) = cli.command.split();
    match run(kind, args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("l1delay {kind}: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
