//! `maxmin`: solve, brute-force, verify, trace, generate and benchmark
//! max-min allocation instances.
//!
//! Exit codes: 0 ok, 1 input error, 2 infeasible at the requested target,
//! 3 instance above an oracle's size guard, 4 verification failure.

mod bench;
mod commands;
mod generate;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "maxmin", version, about = "Max-min allocation over matroids and the Santa Claus problem")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance and print the solution file.
    Solve(SolveArgs),
    /// Exact optimum of a small instance.
    Brute(BruteArgs),
    /// Check a solution file against its instance.
    Verify(VerifyArgs),
    /// Solve and write the solver's trace as JSON lines.
    Trace(TraceArgs),
    /// Write a seeded random instance.
    Generate(generate::GenerateArgs),
    /// Solve every instance in a directory and report CSV.
    Bench(bench::BenchArgs),
}

#[derive(Args, Clone)]
pub struct SolverFlags {
    /// Instance file.
    #[arg(long = "in", value_name = "PATH")]
    pub input: PathBuf,
    /// Accuracy `ε` as `p/q` or a decimal.
    #[arg(long, default_value = "1/20")]
    pub epsilon: String,
    #[arg(long, value_enum, default_value_t = PartitionArg::Default)]
    pub partition: PartitionArg,
    #[arg(long, value_enum, default_value_t = SearchArg::Solver)]
    pub search: SearchArg,
    #[arg(long, value_enum, default_value_t = CollapseArg::Smallest)]
    pub collapse: CollapseArg,
    /// Keep every adding edge of a collapsed layer.
    #[arg(long)]
    pub keep_adding: bool,
    /// Solve at this target instead of searching (overrides `target_T`).
    #[arg(long, value_name = "T")]
    pub target: Option<u64>,
    /// Give leftover gifts to the poorest eligible child.
    #[arg(long)]
    pub greedy_topup: bool,
    /// Accepted for harness compatibility; solving draws no randomness.
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    solver: SolverFlags,
    /// Write the trace as JSON lines (`MAXMIN_TRACE=1` sends it to stderr).
    #[arg(long, value_name = "PATH")]
    trace: Option<PathBuf>,
    /// Solution file path; stdout if absent.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct BruteArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    #[arg(long, value_name = "PATH")]
    solution: PathBuf,
}

#[derive(Args)]
struct TraceArgs {
    #[command(flatten)]
    solver: SolverFlags,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum PartitionArg {
    Default,
    Adaptive,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SearchArg {
    Solver,
    Lp,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum CollapseArg {
    Smallest,
    Largest,
}

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn input(error: impl Into<anyhow::Error>) -> Self {
        Self::new(1, error)
    }

    pub fn new(code: u8, error: impl Into<anyhow::Error>) -> Self {
        Self {
            code,
            error: error.into(),
        }
    }
}

impl From<maxmin_core::Error> for Failure {
    fn from(e: maxmin_core::Error) -> Self {
        let code = match e {
            maxmin_core::Error::UnsupportedScale { .. } => 3,
            _ => 1,
        };
        Self::new(code, e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self::input(e)
    }
}

pub type CliResult<T> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // usage errors are input errors; help and version succeed
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Solve(a) => commands::solve(&a.solver, a.trace.as_deref(), a.out.as_deref()),
        Command::Brute(a) => commands::brute(&a.input, a.out.as_deref()),
        Command::Verify(a) => commands::verify(&a.input, &a.solution),
        Command::Trace(a) => commands::trace(&a.solver, a.out.as_deref()),
        Command::Generate(a) => generate::run(&a),
        Command::Bench(a) => bench::run(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}
