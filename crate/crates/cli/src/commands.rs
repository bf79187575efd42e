use std::fs;
use std::io::Write;
use std::path::Path;

use anyhow::{anyhow, Context};
use maxmin_core::io::{
    write_trace, Instance, InstanceFile, MaxMinSolutionFile, SantaSolutionFile, SolutionFile,
};
use maxmin_core::oracle::{brute_force_matroid_maxmin, brute_force_santa_opt, verify_solution};
use maxmin_core::rational::parse_rational;
use maxmin_core::santa::{self, evaluate_solution, SolveOptions};
use maxmin_core::solver::{CollapseStrategy, Solver, TraceEvent, TraceSink};
use maxmin_core::{
    AllocationInstance, ElementSet, Outcome, PartitionMode, Rational, SearchMode, SolverOptions, SolverParams,
};
use serde_json::json;

use crate::{CliResult, CollapseArg, Failure, PartitionArg, SearchArg, SolverFlags};

/// Outcome of solving one instance file.
pub enum Solved {
    Found(SolutionFile),
    Infeasible(String),
}

pub fn load_instance(path: &Path) -> CliResult<Instance> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(Failure::input)?;
    let file = InstanceFile::parse(&text)?;
    Ok(file.build()?)
}

pub fn parse_epsilon(text: &str) -> CliResult<Rational> {
    Ok(parse_rational(text)?)
}

fn solver_options(flags: &SolverFlags) -> SolverOptions {
    SolverOptions {
        collapse: match flags.collapse {
            CollapseArg::Smallest => CollapseStrategy::SmallestQualifying,
            CollapseArg::Largest => CollapseStrategy::LargestOverlap,
        },
        prune_orphaned_adding: !flags.keep_adding,
        ..SolverOptions::default()
    }
}

fn santa_options(flags: &SolverFlags, epsilon: Rational) -> SolveOptions {
    SolveOptions {
        epsilon,
        partition: match flags.partition {
            PartitionArg::Default => PartitionMode::Default,
            PartitionArg::Adaptive => PartitionMode::Adaptive,
        },
        search: match flags.search {
            SearchArg::Solver => SearchMode::Solver,
            SearchArg::Lp => SearchMode::Lp,
        },
        greedy_topup: flags.greedy_topup,
        solver: solver_options(flags),
    }
}

/// Solves the instance named by `flags`, reporting solver events to `sink`.
pub fn solve_instance(flags: &SolverFlags, sink: Option<&mut dyn TraceSink>) -> CliResult<Solved> {
    let epsilon = parse_epsilon(&flags.epsilon)?;
    match load_instance(&flags.input)? {
        Instance::Santa { instance, target } => {
            let options = santa_options(flags, epsilon);
            for (child, gifts) in instance.gifts_by_child().iter().enumerate() {
                if gifts.is_empty() {
                    eprintln!("warning: child {child} is eligible for no gift; the objective is 0");
                }
            }
            let solution = match flags.target.or(target) {
                Some(t) => match santa::solve_at(&instance, t, &options, sink)? {
                    Some(sol) => sol,
                    None => return Ok(Solved::Infeasible(format!("solver stuck at T = {t}"))),
                },
                None => santa::solve_with_trace(&instance, &options, sink)?.0,
            };
            Ok(Solved::Found(SolutionFile::Santa(SantaSolutionFile::from_solution(&solution))))
        }
        Instance::MaxMin {
            matroid,
            instance,
            target,
        } => {
            let t = flags
                .target
                .or(target)
                .ok_or_else(|| Failure::input(anyhow!("matroid max-min instances need target_T or --target")))?;
            let instance = instance.with_target(t);
            let params = maxmin_params(&instance, epsilon)?;
            let mut solver = Solver::new(&matroid, &instance, params).with_options(solver_options(flags));
            if let Some(sink) = sink {
                solver = solver.with_trace(sink);
            }
            match solver.run()? {
                Outcome::Solved(sol) => Ok(Solved::Found(SolutionFile::MaxMin(
                    MaxMinSolutionFile::from_solution(&instance, &epsilon, &sol),
                ))),
                Outcome::Stuck(s) => Ok(Solved::Infeasible(format!(
                    "solver stuck at T = {t} in phase {} (exposed element {}): expansion reached {} of {} elements",
                    s.phase, s.exposed, s.reached, s.needed
                ))),
            }
        }
    }
}

/// `δ = max p_w / T`, or `δ = 0` when no resource has positive value.
fn maxmin_params(instance: &AllocationInstance, epsilon: Rational) -> CliResult<SolverParams> {
    Ok(if instance.resource_count() == 0 {
        SolverParams::with_delta(instance, Rational::from_integer(0), epsilon)?
    } else {
        SolverParams::derive(instance, epsilon)?
    })
}

fn write_output(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::input),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn trace_text(events: &[TraceEvent]) -> CliResult<String> {
    let mut buf = Vec::new();
    write_trace(events, &mut buf)?;
    String::from_utf8(buf).map_err(Failure::input)
}

fn env_trace() -> bool {
    std::env::var("MAXMIN_TRACE").is_ok_and(|v| v == "1")
}

pub fn solve(flags: &SolverFlags, trace: Option<&Path>, out: Option<&Path>) -> CliResult<u8> {
    let tracing = trace.is_some() || env_trace();
    let mut events: Vec<TraceEvent> = Vec::new();
    let solved = solve_instance(flags, tracing.then_some(&mut events as &mut dyn TraceSink))?;
    if tracing {
        let text = trace_text(&events)?;
        if let Some(path) = trace {
            fs::write(path, &text)
                .with_context(|| format!("writing {}", path.display()))
                .map_err(Failure::input)?;
        }
        if env_trace() {
            eprint!("{text}");
        }
    }
    match solved {
        Solved::Found(file) => {
            write_output(out, &file.to_json())?;
            Ok(0)
        }
        Solved::Infeasible(msg) => {
            eprintln!("infeasible: {msg}");
            Ok(2)
        }
    }
}

pub fn trace(flags: &SolverFlags, out: Option<&Path>) -> CliResult<u8> {
    let mut events: Vec<TraceEvent> = Vec::new();
    let solved = solve_instance(flags, Some(&mut events))?;
    write_output(out, &trace_text(&events)?)?;
    match solved {
        Solved::Found(_) => Ok(0),
        Solved::Infeasible(msg) => {
            eprintln!("infeasible: {msg}");
            Ok(2)
        }
    }
}

pub fn brute(input: &Path, out: Option<&Path>) -> CliResult<u8> {
    let report = match load_instance(input)? {
        Instance::Santa { instance, .. } => {
            let opt = brute_force_santa_opt(&instance)?;
            let witness: Vec<_> = opt
                .witness
                .iter()
                .enumerate()
                .filter_map(|(gift, c)| c.map(|child| json!({"gift": gift, "child": child})))
                .collect();
            json!({"kind": "santa", "opt": opt.opt, "witness": witness})
        }
        Instance::MaxMin {
            matroid, instance, ..
        } => {
            let opt = brute_force_matroid_maxmin(&matroid, &instance)?;
            let witness: Vec<_> = opt
                .witness
                .iter()
                .enumerate()
                .filter_map(|(w, e)| {
                    let label = instance.label(maxmin_core::ResourceId(w as u32));
                    e.map(|e| json!({"resource": label, "element": e.index()}))
                })
                .collect();
            let basis: Vec<usize> = opt.basis.iter().map(|e| e.index()).collect();
            let value = (opt.opt != u64::MAX).then_some(opt.opt);
            json!({"kind": "matroid-maxmin", "opt": value, "basis": basis, "witness": witness})
        }
    };
    let mut text = serde_json::to_string_pretty(&report).map_err(Failure::input)?;
    text.push('\n');
    write_output(out, &text)?;
    Ok(0)
}

pub fn verify(input: &Path, solution: &Path) -> CliResult<u8> {
    let instance = load_instance(input)?;
    let text = fs::read_to_string(solution)
        .with_context(|| format!("reading {}", solution.display()))
        .map_err(Failure::input)?;
    let file = SolutionFile::parse(&text)?;
    let violations = match (&instance, &file) {
        (Instance::Santa { instance, .. }, SolutionFile::Santa(sol)) => {
            let sol = sol.to_solution(instance.gift_count())?;
            evaluate_solution(instance, &sol).violations
        }
        (
            Instance::MaxMin {
                matroid, instance, ..
            },
            SolutionFile::MaxMin(sol),
        ) => {
            let instance = instance.with_target(sol.target);
            let epsilon = parse_rational(&sol.epsilon)?;
            let edges = sol.edges(&instance)?;
            let basis: ElementSet = sol.basis.iter().map(|&i| i.into()).collect();
            let mut violations =
                verify_solution(matroid, &instance, &basis, &edges, &guarantee(&instance, epsilon)).violations;
            let min = edges.iter().map(|e| e.value).min();
            if min != sol.objective {
                violations.push(format!(
                    "stated objective {:?} differs from smallest edge value {min:?}",
                    sol.objective
                ));
            }
            violations
        }
        _ => {
            return Err(Failure::input(anyhow!(
                "solution kind does not match the instance kind"
            )))
        }
    };
    if violations.is_empty() {
        println!("valid");
        Ok(0)
    } else {
        for v in &violations {
            println!("violation: {v}");
        }
        Ok(4)
    }
}

/// Edge value every solver output reaches: `(1/3 − ε)·T − max_w p_w / 3`.
pub fn guarantee(instance: &AllocationInstance, epsilon: Rational) -> Rational {
    let t = Rational::from_integer(instance.target() as i128);
    let p = Rational::from_integer(instance.max_value() as i128);
    (Rational::new(1, 3) - epsilon) * t - p / Rational::from_integer(3)
}
