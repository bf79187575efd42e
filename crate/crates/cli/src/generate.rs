use std::path::PathBuf;

use anyhow::{anyhow, bail};
use clap::{Args, ValueEnum};
use maxmin_core::io::{
    generate_maxmin, generate_santa, InstanceFile, MatroidFamily, MaxMinProfile, SantaProfile, ValueDist,
};

use crate::{CliResult, Failure};

#[derive(Clone, Copy, ValueEnum)]
pub enum KindArg {
    Santa,
    Maxmin,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FamilyArg {
    Free,
    Uniform,
    Partition,
    Transversal,
    DualTransversal,
    Mixed,
}

#[derive(Args)]
pub struct GenerateArgs {
    #[arg(long, value_enum, default_value_t = KindArg::Santa)]
    kind: KindArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Children (santa) or ground elements (maxmin).
    #[arg(long, default_value_t = 4)]
    children: usize,
    /// Gifts (santa) or resources (maxmin).
    #[arg(long, default_value_t = 8)]
    gifts: usize,
    /// `uniform:MIN:MAX` or `two-point:LOW:HIGH:PROB`.
    #[arg(long, default_value = "uniform:1:100")]
    values: String,
    /// Eligibility probability per (item, child) pair.
    #[arg(long, default_value_t = 0.5)]
    density: f64,
    #[arg(long, value_enum, default_value_t = FamilyArg::Mixed)]
    matroid: FamilyArg,
    /// Written as `target_T`; for maxmin, the range `MIN:MAX` to draw it from.
    #[arg(long)]
    target: Option<String>,
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

pub fn parse_values(text: &str) -> anyhow::Result<ValueDist> {
    let parts: Vec<&str> = text.split(':').collect();
    let int = |s: &str| s.parse::<u64>().map_err(|_| anyhow!("bad integer {s:?} in {text:?}"));
    match parts.as_slice() {
        ["uniform", min, max] => {
            let (min, max) = (int(min)?, int(max)?);
            if min > max {
                bail!("empty value range {min}..={max}");
            }
            Ok(ValueDist::Uniform { min, max })
        }
        ["two-point", low, high, prob] => {
            let high_prob: f64 = prob.parse().map_err(|_| anyhow!("bad probability {prob:?}"))?;
            if !(0.0..=1.0).contains(&high_prob) {
                bail!("probability {high_prob} outside [0, 1]");
            }
            Ok(ValueDist::TwoPoint {
                low: int(low)?,
                high: int(high)?,
                high_prob,
            })
        }
        _ => bail!("value distribution must be uniform:MIN:MAX or two-point:LOW:HIGH:PROB, got {text:?}"),
    }
}

fn parse_range(text: &str) -> anyhow::Result<(u64, u64)> {
    let int = |s: &str| s.parse::<u64>().map_err(|_| anyhow!("bad target {text:?}"));
    match text.split_once(':') {
        Some((a, b)) => Ok((int(a)?, int(b)?)),
        None => {
            let t = int(text)?;
            Ok((t, t))
        }
    }
}

pub fn run(args: &GenerateArgs) -> CliResult<u8> {
    let values = parse_values(&args.values).map_err(Failure::input)?;
    if !(0.0..=1.0).contains(&args.density) {
        return Err(Failure::input(anyhow!("density {} outside [0, 1]", args.density)));
    }
    let file = match args.kind {
        KindArg::Santa => {
            let profile = SantaProfile {
                children: args.children,
                gifts: args.gifts,
                values,
                density: args.density,
            };
            let mut file = generate_santa(args.seed, &profile);
            if let Some(t) = &args.target {
                file.target = Some(t.parse().map_err(|_| Failure::input(anyhow!("bad target {t:?}")))?);
            }
            InstanceFile::Santa(file)
        }
        KindArg::Maxmin => {
            let (target_min, target_max) = match &args.target {
                Some(t) => parse_range(t).map_err(Failure::input)?,
                None => (1, 1),
            };
            let right = args.children.div_ceil(2).max(1);
            let matroid = match args.matroid {
                FamilyArg::Free => MatroidFamily::Free,
                FamilyArg::Uniform => MatroidFamily::Uniform,
                FamilyArg::Partition => MatroidFamily::Partition,
                FamilyArg::Transversal => MatroidFamily::Transversal { right, density: 0.5 },
                FamilyArg::DualTransversal => MatroidFamily::DualTransversal { right, density: 0.5 },
                FamilyArg::Mixed => MatroidFamily::Mixed,
            };
            let profile = MaxMinProfile {
                elements: args.children,
                resources: args.gifts,
                values,
                density: args.density,
                matroid,
                target_min,
                target_max,
            };
            InstanceFile::MaxMin(generate_maxmin(args.seed, &profile))
        }
    };
    let text = file.to_json();
    match &args.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(0)
}
