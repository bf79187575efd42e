//! JSON instance and solution files, JSONL traces and the seeded generator.
//!
//! Instances:
//!
//! ```json
//! {"kind": "santa", "children": [0, 1],
//!  "gifts": [{"id": 0, "value": 5, "eligible": [0, 1]}], "target_T": 5}
//! {"kind": "matroid-maxmin", "ground": [0, 1],
//!  "resources": [{"id": 0, "value": 5, "eligible": [0]}],
//!  "matroid": {"type": "uniform", "rank": 1}, "target_T": 5}
//! ```
//!
//! Ids must be `0..n` in order. Rationals are written as `"p/q"` strings.

mod generate;

use std::collections::BTreeMap;
use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{AnyMatroid, DualMatroid, ElementId, PartitionMatroid, TransversalMatroid, UniformMatroid};
use crate::model::{AllocationInstance, HyperEdge, ResourceId};
use crate::rational::{self, Rational};
use crate::santa::{SantaInstance, SantaSolution};
use crate::solver::{Solution, SolverStats, TraceEvent};

pub use generate::{
    generate_maxmin, generate_santa, MatroidFamily, MaxMinProfile, SantaProfile, ValueDist,
};

/// A gift or resource: value and the children / elements it is adjacent to.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ItemEntry {
    pub id: usize,
    pub value: u64,
    pub eligible: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase", deny_unknown_fields)]
pub enum MatroidSpec {
    Uniform { rank: usize },
    Partition { blocks: Vec<usize>, capacities: Vec<usize> },
    /// `adjacency[i]`: right vertices element `i` can be matched to.
    Transversal { right: usize, adjacency: Vec<Vec<usize>> },
    Dual { of: Box<MatroidSpec> },
}

impl MatroidSpec {
    pub fn build(&self, ground: usize) -> Result<AnyMatroid> {
        let bad = |e: Error| Error::Format(format!("matroid: {e}"));
        Ok(match self {
            MatroidSpec::Uniform { rank } => UniformMatroid::new(*rank, ground).map_err(bad)?.into(),
            MatroidSpec::Partition { blocks, capacities } => {
                if blocks.len() != ground {
                    return Err(Error::Format(format!(
                        "partition matroid lists {} blocks for {ground} elements",
                        blocks.len()
                    )));
                }
                PartitionMatroid::new(blocks.clone(), capacities.clone()).map_err(bad)?.into()
            }
            MatroidSpec::Transversal { right, adjacency } => {
                TransversalMatroid::new(ground, *right, adjacency.clone()).map_err(bad)?.into()
            }
            MatroidSpec::Dual { of } => AnyMatroid::Dual(Box::new(DualMatroid::new(of.build(ground)?))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SantaFile {
    pub children: Vec<usize>,
    pub gifts: Vec<ItemEntry>,
    #[serde(default, rename = "target_T", skip_serializing_if = "Option::is_none")]
    pub target: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxMinFile {
    pub ground: Vec<usize>,
    pub resources: Vec<ItemEntry>,
    pub matroid: MatroidSpec,
    #[serde(default, rename = "target_T", skip_serializing_if = "Option::is_none")]
    pub target: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InstanceFile {
    #[serde(rename = "santa")]
    Santa(SantaFile),
    #[serde(rename = "matroid-maxmin")]
    MaxMin(MaxMinFile),
}

/// A parsed and validated instance.
#[derive(Clone, Debug)]
pub enum Instance {
    Santa {
        instance: SantaInstance,
        target: Option<u64>,
    },
    MaxMin {
        matroid: AnyMatroid,
        instance: AllocationInstance,
        target: Option<u64>,
    },
}

fn check_dense(what: &str, ids: impl Iterator<Item = usize>) -> Result<()> {
    for (k, id) in ids.enumerate() {
        if id != k {
            return Err(Error::Format(format!("{what} ids must be 0..n in order; found {id} at position {k}")));
        }
    }
    Ok(())
}

impl InstanceFile {
    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(format!("instance file: {e}")))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    pub fn target(&self) -> Option<u64> {
        match self {
            InstanceFile::Santa(f) => f.target,
            InstanceFile::MaxMin(f) => f.target,
        }
    }

    pub fn build(&self) -> Result<Instance> {
        match self {
            InstanceFile::Santa(f) => {
                check_dense("child", f.children.iter().copied())?;
                check_dense("gift", f.gifts.iter().map(|g| g.id))?;
                let instance = SantaInstance::new(
                    f.children.len(),
                    f.gifts.iter().map(|g| g.value).collect(),
                    f.gifts.iter().map(|g| g.eligible.clone()).collect(),
                )
                .map_err(|e| Error::Format(e.to_string()))?;
                Ok(Instance::Santa {
                    instance,
                    target: f.target,
                })
            }
            InstanceFile::MaxMin(f) => {
                check_dense("ground", f.ground.iter().copied())?;
                check_dense("resource", f.resources.iter().map(|r| r.id))?;
                let n = f.ground.len();
                let mut neighbors = vec![Vec::new(); n];
                for r in &f.resources {
                    for &i in &r.eligible {
                        let row = neighbors.get_mut(i).ok_or_else(|| {
                            Error::Format(format!("resource {} adjacent to unknown element {i}", r.id))
                        })?;
                        row.push(r.id);
                    }
                }
                let instance = AllocationInstance::new(
                    f.resources.iter().map(|r| r.value).collect(),
                    neighbors,
                    f.target.unwrap_or(0),
                )
                .map_err(|e| Error::Format(e.to_string()))?;
                Ok(Instance::MaxMin {
                    matroid: f.matroid.build(n)?,
                    instance,
                    target: f.target,
                })
            }
        }
    }
}

impl SantaFile {
    pub fn from_instance(inst: &SantaInstance, target: Option<u64>) -> Self {
        Self {
            children: (0..inst.child_count()).collect(),
            gifts: (0..inst.gift_count())
                .map(|j| ItemEntry {
                    id: j,
                    value: inst.value(j),
                    eligible: inst.eligible(j).to_vec(),
                })
                .collect(),
            target,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StatsFile {
    pub phases: usize,
    pub iterations: u64,
    pub max_layers: usize,
    pub collapses: u64,
}

impl From<&SolverStats> for StatsFile {
    fn from(s: &SolverStats) -> Self {
        Self {
            phases: s.phases,
            iterations: s.iterations,
            max_layers: s.max_layers,
            collapses: s.collapses,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartitionEntry {
    pub delta1: String,
    pub delta2: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssignmentEntry {
    pub gift: usize,
    pub child: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SantaSolutionFile {
    #[serde(rename = "T")]
    pub target: u64,
    pub epsilon: String,
    pub partition: Option<PartitionEntry>,
    pub assignment: Vec<AssignmentEntry>,
    pub objective: u64,
    pub per_child: BTreeMap<usize, u64>,
    pub large_children: Vec<usize>,
    pub stats: StatsFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingEntry {
    pub element: usize,
    /// Input resource ids.
    pub resources: Vec<usize>,
    pub value: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaxMinSolutionFile {
    #[serde(rename = "T")]
    pub target: u64,
    pub epsilon: String,
    pub basis: Vec<usize>,
    pub matching: Vec<MatchingEntry>,
    /// Smallest edge value; absent for an empty basis.
    pub objective: Option<u64>,
    pub stats: StatsFile,
}

/// Tagged by `"kind"` like [`InstanceFile`]; parsed by hand because
/// internally tagged enums cannot read integer map keys.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum SolutionFile {
    #[serde(rename = "santa")]
    Santa(SantaSolutionFile),
    #[serde(rename = "matroid-maxmin")]
    MaxMin(MaxMinSolutionFile),
}

impl SolutionFile {
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |e: serde_json::Error| Error::Format(format!("solution file: {e}"));
        let mut value: serde_json::Value = serde_json::from_str(text).map_err(bad)?;
        let kind = value
            .as_object_mut()
            .and_then(|m| m.remove("kind"))
            .ok_or_else(|| Error::Format("solution file: missing \"kind\"".into()))?;
        match kind.as_str() {
            Some("santa") => Ok(SolutionFile::Santa(serde_json::from_value(value).map_err(bad)?)),
            Some("matroid-maxmin") => Ok(SolutionFile::MaxMin(serde_json::from_value(value).map_err(bad)?)),
            _ => Err(Error::Format(format!("solution file: unknown kind {kind}"))),
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }
}

impl SantaSolutionFile {
    pub fn from_solution(sol: &SantaSolution) -> Self {
        Self {
            target: sol.target,
            epsilon: rational::format_rational(&sol.epsilon),
            partition: sol.partition.map(|(d1, d2)| PartitionEntry {
                delta1: rational::format_rational(&d1),
                delta2: rational::format_rational(&d2),
            }),
            assignment: sol
                .assignment
                .iter()
                .enumerate()
                .filter_map(|(gift, c)| c.map(|child| AssignmentEntry { gift, child }))
                .collect(),
            objective: sol.objective,
            per_child: sol.per_child.iter().copied().enumerate().collect(),
            large_children: sol.large_children.clone(),
            stats: StatsFile::from(&sol.stats),
        }
    }

    /// Gift → child table for `gifts` gifts.
    pub fn assignment_vector(&self, gifts: usize) -> Result<Vec<Option<usize>>> {
        let mut out = vec![None; gifts];
        for a in &self.assignment {
            let slot = out
                .get_mut(a.gift)
                .ok_or_else(|| Error::Format(format!("assignment names unknown gift {}", a.gift)))?;
            if slot.replace(a.child).is_some() {
                return Err(Error::Format(format!("gift {} assigned twice", a.gift)));
            }
        }
        Ok(out)
    }

    /// Rebuilds a [`SantaSolution`] (statistics beyond the file's are zero).
    pub fn to_solution(&self, gifts: usize) -> Result<SantaSolution> {
        let parse = |s: &str| rational::parse_rational(s).map_err(|e| Error::Format(e.to_string()));
        let partition = match &self.partition {
            Some(p) => Some((parse(&p.delta1)?, parse(&p.delta2)?)),
            None => None,
        };
        Ok(SantaSolution {
            target: self.target,
            epsilon: parse(&self.epsilon)?,
            partition,
            assignment: self.assignment_vector(gifts)?,
            objective: self.objective,
            per_child: self.per_child.values().copied().collect(),
            large_children: self.large_children.clone(),
            stats: SolverStats {
                phases: self.stats.phases,
                iterations: self.stats.iterations,
                max_layers: self.stats.max_layers,
                collapses: self.stats.collapses,
                ..SolverStats::default()
            },
        })
    }
}

impl MaxMinSolutionFile {
    pub fn from_solution(inst: &AllocationInstance, epsilon: &Rational, sol: &Solution) -> Self {
        Self {
            target: inst.target(),
            epsilon: rational::format_rational(epsilon),
            basis: sol.basis.iter().map(|e| e.index()).collect(),
            matching: sol
                .matching
                .iter()
                .map(|e| MatchingEntry {
                    element: e.owner.index(),
                    resources: e.resources.iter().map(|w| inst.label(*w)).collect(),
                    value: e.value,
                })
                .collect(),
            objective: sol.min_value(),
            stats: StatsFile::from(&sol.stats),
        }
    }

    /// Matching edges in instance resource ids; fails on ids of dropped
    /// (zero-valued) or unknown resources.
    pub fn edges(&self, inst: &AllocationInstance) -> Result<Vec<HyperEdge>> {
        let mut dense = BTreeMap::new();
        for w in 0..inst.resource_count() {
            dense.insert(inst.label(ResourceId(w as u32)), ResourceId(w as u32));
        }
        self.matching
            .iter()
            .map(|m| {
                let mut resources = m
                    .resources
                    .iter()
                    .map(|r| {
                        dense
                            .get(r)
                            .copied()
                            .ok_or_else(|| Error::Format(format!("matching uses unknown resource {r}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                resources.sort_unstable();
                Ok(HyperEdge {
                    owner: ElementId::from(m.element),
                    resources,
                    value: m.value,
                })
            })
            .collect()
    }
}

/// Writes events as JSON lines.
pub fn write_trace<W: Write>(events: &[TraceEvent], mut out: W) -> std::io::Result<()> {
    for e in events {
        serde_json::to_writer(&mut out, e)?;
        out.write_all(b"\n")?;
    }
    out.flush()
}

/// Parses JSON lines back into events; blank lines are skipped.
pub fn read_trace(text: &str) -> Result<Vec<TraceEvent>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .enumerate()
        .map(|(k, l)| {
            serde_json::from_str(l).map_err(|e| Error::Format(format!("trace line {}: {e}", k + 1)))
        })
        .collect()
}
