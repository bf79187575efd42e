use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::Args;
use rayon::prelude::*;

use crate::commands::{solve_instance, Solved};
use crate::{CliResult, CollapseArg, Failure, PartitionArg, SearchArg, SolverFlags};
use maxmin_core::io::SolutionFile;

#[derive(Args)]
pub struct BenchArgs {
    /// Directory of instance files (`*.json`, taken in name order).
    #[arg(long)]
    suite: PathBuf,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    #[arg(long, default_value = "1/20")]
    epsilon: String,
    #[arg(long, value_enum, default_value_t = PartitionArg::Default)]
    partition: PartitionArg,
    /// Fail (exit 4) if any run takes more solver iterations.
    #[arg(long, value_name = "N")]
    assert_iterations: Option<u64>,
    /// Leave the wall-time column empty, making the CSV reproducible.
    #[arg(long)]
    no_timing: bool,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

struct Row {
    instance: String,
    kind: &'static str,
    status: &'static str,
    target: Option<u64>,
    objective: Option<u64>,
    phases: usize,
    iterations: u64,
    max_layers: usize,
    collapses: u64,
    wall_ms: f64,
}

fn suite_files(dir: &Path) -> CliResult<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
        .with_context(|| format!("reading suite {}", dir.display()))
        .map_err(Failure::input)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

fn bench_one(path: &Path, args: &BenchArgs) -> CliResult<Row> {
    let flags = SolverFlags {
        input: path.to_path_buf(),
        epsilon: args.epsilon.clone(),
        partition: args.partition,
        search: SearchArg::Solver,
        collapse: CollapseArg::Smallest,
        keep_adding: false,
        target: None,
        greedy_topup: false,
        seed: None,
    };
    let start = Instant::now();
    let solved = solve_instance(&flags, None)?;
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    let mut row = Row {
        instance: path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default(),
        kind: "",
        status: "infeasible",
        target: None,
        objective: None,
        phases: 0,
        iterations: 0,
        max_layers: 0,
        collapses: 0,
        wall_ms,
    };
    if let Solved::Found(file) = solved {
        row.status = "solved";
        let stats = match &file {
            SolutionFile::Santa(s) => {
                row.kind = "santa";
                row.target = Some(s.target);
                row.objective = Some(s.objective);
                s.stats
            }
            SolutionFile::MaxMin(s) => {
                row.kind = "matroid-maxmin";
                row.target = Some(s.target);
                row.objective = s.objective;
                s.stats
            }
        };
        row.phases = stats.phases;
        row.iterations = stats.iterations;
        row.max_layers = stats.max_layers;
        row.collapses = stats.collapses;
    }
    Ok(row)
}

pub fn run(args: &BenchArgs) -> CliResult<u8> {
    let files = suite_files(&args.suite)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.max(1))
        .build()
        .map_err(Failure::input)?;
    let rows: Vec<Row> = pool.install(|| {
        files
            .par_iter()
            .map(|p| bench_one(p, args))
            .collect::<CliResult<Vec<Row>>>()
    })?;

    let sink: Box<dyn std::io::Write> = match &args.out {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut csv = csv::Writer::from_writer(sink);
    let write = |csv: &mut csv::Writer<_>, record: Vec<String>| csv.write_record(record).map_err(Failure::input);
    write(
        &mut csv,
        [
            "instance", "kind", "status", "T", "objective", "phases", "iterations", "max_layers", "collapses",
            "wall_ms",
        ]
        .map(String::from)
        .to_vec(),
    )?;
    let opt = |v: Option<u64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in &rows {
        write(
            &mut csv,
            vec![
                r.instance.clone(),
                r.kind.to_string(),
                r.status.to_string(),
                opt(r.target),
                opt(r.objective),
                r.phases.to_string(),
                r.iterations.to_string(),
                r.max_layers.to_string(),
                r.collapses.to_string(),
                if args.no_timing { String::new() } else { format!("{:.3}", r.wall_ms) },
            ],
        )?;
    }
    csv.flush()?;

    if let Some(limit) = args.assert_iterations {
        let over: Vec<&Row> = rows.iter().filter(|r| r.iterations > limit).collect();
        if !over.is_empty() {
            for r in over {
                eprintln!("iteration limit {limit} exceeded: {} took {}", r.instance, r.iterations);
            }
            return Ok(4);
        }
    }
    Ok(0)
}
