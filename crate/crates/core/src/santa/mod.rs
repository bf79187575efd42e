//! Santa Claus via matroid max-min allocation.
//!
//! Gifts are split into large gifts (worth more than `δ₂T`) and small ones
//! (worth at most `δ₁T`). Children that can be matched into the large gifts
//! form a transversal matroid; the solver runs on its dual with the small
//! gifts as resources, so every child of the returned basis is covered by
//! small gifts and all other children get one large gift each.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching;
use crate::matroid::{DualMatroid, ElementId, ElementSet, TransversalMatroid};
use crate::model::{AllocationInstance, SolverParams};
use crate::oracle;
use crate::rational::Rational;
use crate::solver::{Outcome, Solver, SolverOptions, SolverStats, TraceSink};

/// Children `0..children`, gifts with value `p_j > 0` and eligible sets `A_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SantaInstance {
    children: usize,
    values: Vec<u64>,
    eligible: Vec<Vec<usize>>,
}

impl SantaInstance {
    pub fn new(children: usize, values: Vec<u64>, eligible: Vec<Vec<usize>>) -> Result<Self> {
        if values.len() != eligible.len() {
            return Err(Error::InvalidInstance(format!(
                "{} gift values but {} eligibility lists",
                values.len(),
                eligible.len()
            )));
        }
        if let Some(j) = values.iter().position(|&p| p == 0) {
            return Err(Error::InvalidInstance(format!("gift {j} has value 0")));
        }
        let mut eligible = eligible;
        for (j, row) in eligible.iter_mut().enumerate() {
            if let Some(&i) = row.iter().find(|&&i| i >= children) {
                return Err(Error::InvalidInstance(format!(
                    "gift {j} eligible for unknown child {i}"
                )));
            }
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self {
            children,
            values,
            eligible,
        })
    }

    pub fn child_count(&self) -> usize {
        self.children
    }

    pub fn gift_count(&self) -> usize {
        self.values.len()
    }

    pub fn value(&self, gift: usize) -> u64 {
        self.values[gift]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn eligible(&self, gift: usize) -> &[usize] {
        &self.eligible[gift]
    }

    pub fn is_eligible(&self, gift: usize, child: usize) -> bool {
        self.eligible[gift].binary_search(&child).is_ok()
    }

    pub fn total_value(&self) -> u64 {
        self.values.iter().sum()
    }

    /// Gifts each child is eligible for, ascending.
    pub fn gifts_by_child(&self) -> Vec<Vec<usize>> {
        let mut rows = vec![Vec::new(); self.children];
        for (j, row) in self.eligible.iter().enumerate() {
            for &i in row {
                rows[i].push(j);
            }
        }
        rows
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PartitionMode {
    /// `δ₁ = δ₂ = 1/4`.
    #[default]
    Default,
    /// `δ₁T` the largest value at most `T/4`, `δ₂T` the smallest above it.
    Adaptive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SearchMode {
    /// Binary search with "the solver completes" as predicate.
    #[default]
    Solver,
    /// Binary search on the compact LP, then one solver run.
    Lp,
}

/// Split of the gifts at a target `T`. Values above `T` count as `T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GiftPartition {
    pub target: u64,
    pub delta1: Rational,
    pub delta2: Rational,
    /// Large gifts, ascending.
    pub large: Vec<usize>,
    /// Small gifts, ascending.
    pub small: Vec<usize>,
}

impl GiftPartition {
    /// Partition with the given bounds: large iff the capped value exceeds
    /// `δ₂T`, small iff the value is at most `δ₁T`. Every gift must land in
    /// one of the two classes.
    pub fn with_deltas(
        inst: &SantaInstance,
        target: u64,
        delta1: Rational,
        delta2: Rational,
    ) -> Result<Self> {
        if target == 0 {
            return Err(Error::InvalidInput("partition needs T > 0".into()));
        }
        if delta1 > delta2 {
            return Err(Error::Parameter("δ₁ must not exceed δ₂".into()));
        }
        let t = Rational::from_integer(target as i128);
        let (t1, t2) = (delta1 * t, delta2 * t);
        let mut large = Vec::new();
        let mut small = Vec::new();
        for j in 0..inst.gift_count() {
            let p = Rational::from_integer(capped(inst.value(j), target) as i128);
            if p > t2 {
                large.push(j);
            } else if p <= t1 {
                small.push(j);
            } else {
                return Err(Error::Parameter(format!(
                    "gift {j} lies strictly between δ₁T and δ₂T"
                )));
            }
        }
        Ok(Self {
            target,
            delta1,
            delta2,
            large,
            small,
        })
    }

    pub fn is_large(&self, gift: usize) -> bool {
        self.large.binary_search(&gift).is_ok()
    }
}

fn capped(value: u64, target: u64) -> u64 {
    value.min(target)
}

/// Gift partition at `T` (which must be positive).
///
/// In both modes small gifts are those with `4p ≤ T`. In adaptive mode the
/// remaining gifts are large, `δ₂T` is the smallest of their capped values
/// (so the smallest large gift sits at `δ₂T` itself), and `δ₁T` is the
/// largest small value.
pub fn partition_gifts(inst: &SantaInstance, target: u64, mode: PartitionMode) -> Result<GiftPartition> {
    if target == 0 {
        return Err(Error::InvalidInput("partition needs T > 0".into()));
    }
    let quarter_ok = |p: u64| 4 * (p as u128) <= target as u128;
    let (small, large): (Vec<usize>, Vec<usize>) =
        (0..inst.gift_count()).partition(|&j| quarter_ok(inst.value(j)));
    let t = target as i128;
    let (delta1, delta2) = match mode {
        PartitionMode::Default => (Rational::new(1, 4), Rational::new(1, 4)),
        PartitionMode::Adaptive => {
            let d1 = small.iter().map(|&j| inst.value(j)).max().unwrap_or(0);
            let d2 = large
                .iter()
                .map(|&j| capped(inst.value(j), target))
                .min()
                .unwrap_or(target);
            (Rational::new(d1 as i128, t), Rational::new(d2 as i128, t))
        }
    };
    Ok(GiftPartition {
        target,
        delta1,
        delta2,
        large,
        small,
    })
}

/// Matchable-set matroid of children into large gifts, and its dual.
pub fn build_matroids(
    inst: &SantaInstance,
    partition: &GiftPartition,
) -> Result<(TransversalMatroid, DualMatroid<TransversalMatroid>)> {
    let primal = TransversalMatroid::new(
        inst.child_count(),
        partition.large.len(),
        large_adjacency(inst, partition),
    )?;
    let dual = DualMatroid::new(primal.clone());
    Ok((primal, dual))
}

fn large_adjacency(inst: &SantaInstance, partition: &GiftPartition) -> Vec<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); inst.child_count()];
    for (k, &j) in partition.large.iter().enumerate() {
        for &i in inst.eligible(j) {
            adjacency[i].push(k);
        }
    }
    adjacency
}

/// Children as elements, small gifts as resources. Resource `w` of the result
/// has label `k` with `partition.small[k]` the gift.
pub fn reduce_to_allocation(inst: &SantaInstance, partition: &GiftPartition) -> Result<AllocationInstance> {
    let values = partition.small.iter().map(|&j| inst.value(j)).collect();
    let mut neighbors = vec![Vec::new(); inst.child_count()];
    for (k, &j) in partition.small.iter().enumerate() {
        for &i in inst.eligible(j) {
            neighbors[i].push(k);
        }
    }
    AllocationInstance::new(values, neighbors, partition.target)
}

/// Gives each child of `children` one large gift; `(gift, child)` pairs
/// ordered by child.
pub fn assign_large_gifts(
    inst: &SantaInstance,
    partition: &GiftPartition,
    children: &ElementSet,
) -> Result<Vec<(usize, usize)>> {
    let adjacency = large_adjacency(inst, partition);
    let active: Vec<usize> = children.iter().map(|c| c.index()).collect();
    let mates = matching::maximum_matching(&adjacency, partition.large.len(), &active);
    active
        .iter()
        .map(|&i| {
            mates[i]
                .map(|k| (partition.large[k], i))
                .ok_or_else(|| Error::Internal(format!("child {i} cannot get a large gift")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveOptions {
    pub epsilon: Rational,
    pub partition: PartitionMode,
    pub search: SearchMode,
    /// Hand unassigned gifts to the poorest eligible child afterwards.
    pub greedy_topup: bool,
    pub solver: SolverOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            epsilon: Rational::new(1, 20),
            partition: PartitionMode::Default,
            search: SearchMode::Solver,
            greedy_topup: false,
            solver: SolverOptions::default(),
        }
    }
}

/// An assignment together with the target and partition that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SantaSolution {
    pub target: u64,
    pub epsilon: Rational,
    /// `None` when `T = 0`, where no partition is defined.
    pub partition: Option<(Rational, Rational)>,
    /// Child of each gift, if assigned.
    pub assignment: Vec<Option<usize>>,
    pub objective: u64,
    pub per_child: Vec<u64>,
    /// Children served by a single large gift.
    pub large_children: Vec<usize>,
    pub stats: SolverStats,
}

/// Recomputed values of an assignment.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub objective: u64,
    pub per_child: Vec<u64>,
    pub violations: Vec<String>,
}

impl Evaluation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Values each child receives under `assignment` (one entry per gift).
pub fn evaluate_assignment(inst: &SantaInstance, assignment: &[Option<usize>]) -> Evaluation {
    let mut per_child = vec![0u64; inst.child_count()];
    let mut violations = Vec::new();
    if assignment.len() != inst.gift_count() {
        violations.push(format!(
            "assignment covers {} gifts, instance has {}",
            assignment.len(),
            inst.gift_count()
        ));
    }
    for (j, child) in assignment.iter().enumerate().take(inst.gift_count()) {
        let Some(i) = *child else { continue };
        if i >= inst.child_count() {
            violations.push(format!("gift {j} assigned to unknown child {i}"));
        } else if !inst.is_eligible(j, i) {
            violations.push(format!("gift {j} assigned to ineligible child {i}"));
        } else {
            per_child[i] += inst.value(j);
        }
    }
    Evaluation {
        objective: per_child.iter().copied().min().unwrap_or(0),
        per_child,
        violations,
    }
}

/// Re-checks a solution from scratch: validity of every gift placement and
/// agreement of the stored objective and per-child values.
pub fn evaluate_solution(inst: &SantaInstance, sol: &SantaSolution) -> Evaluation {
    let mut eval = evaluate_assignment(inst, &sol.assignment);
    if eval.objective != sol.objective {
        eval.violations.push(format!(
            "stored objective {} differs from recomputed {}",
            sol.objective, eval.objective
        ));
    }
    if eval.per_child != sol.per_child {
        eval.violations.push("stored per-child values differ".into());
    }
    eval
}

/// One attempt at target `T`: `None` if the solver gets stuck. `T = 0`
/// needs no solver run.
pub fn solve_at(
    inst: &SantaInstance,
    target: u64,
    options: &SolveOptions,
    trace: Option<&mut dyn TraceSink>,
) -> Result<Option<SantaSolution>> {
    if target == 0 {
        return Ok(Some(empty_solution(inst, options)));
    }
    let partition = partition_gifts(inst, target, options.partition)?;
    let (_, dual) = build_matroids(inst, &partition)?;
    let alloc = reduce_to_allocation(inst, &partition)?;
    let params = SolverParams::with_delta(&alloc, partition.delta1, options.epsilon)?;
    let mut solver = Solver::new(&dual, &alloc, params).with_options(options.solver.clone());
    if let Some(sink) = trace {
        solver = solver.with_trace(sink);
    }
    let solution = match solver.run()? {
        Outcome::Solved(s) => s,
        Outcome::Stuck(_) => return Ok(None),
    };
    let mut assignment = vec![None; inst.gift_count()];
    for edge in &solution.matching {
        for w in &edge.resources {
            assignment[partition.small[alloc.label(*w)]] = Some(edge.owner.index());
        }
    }
    let large_children: ElementSet = (0..inst.child_count())
        .map(ElementId::from)
        .filter(|i| !solution.basis.contains(i))
        .collect();
    for (gift, child) in assign_large_gifts(inst, &partition, &large_children)? {
        assignment[gift] = Some(child);
    }
    if options.greedy_topup {
        greedy_topup(inst, &mut assignment);
    }
    let eval = evaluate_assignment(inst, &assignment);
    Ok(Some(SantaSolution {
        target,
        epsilon: options.epsilon,
        partition: Some((partition.delta1, partition.delta2)),
        assignment,
        objective: eval.objective,
        per_child: eval.per_child,
        large_children: large_children.iter().map(|c| c.index()).collect(),
        stats: solution.stats,
    }))
}

fn empty_solution(inst: &SantaInstance, options: &SolveOptions) -> SantaSolution {
    let mut assignment = vec![None; inst.gift_count()];
    if options.greedy_topup {
        greedy_topup(inst, &mut assignment);
    }
    let eval = evaluate_assignment(inst, &assignment);
    SantaSolution {
        target: 0,
        epsilon: options.epsilon,
        partition: None,
        assignment,
        objective: eval.objective,
        per_child: eval.per_child,
        large_children: Vec::new(),
        stats: SolverStats::default(),
    }
}

/// Unassigned gifts, by descending value then id, each to the currently
/// poorest eligible child (ties to the lowest child id).
fn greedy_topup(inst: &SantaInstance, assignment: &mut [Option<usize>]) {
    let mut per_child = evaluate_assignment(inst, assignment).per_child;
    let mut open: Vec<usize> = (0..inst.gift_count()).filter(|&j| assignment[j].is_none()).collect();
    open.sort_by_key(|&j| (std::cmp::Reverse(inst.value(j)), j));
    for j in open {
        if let Some(&i) = inst.eligible(j).iter().min_by_key(|&&i| (per_child[i], i)) {
            assignment[j] = Some(i);
            per_child[i] += inst.value(j);
        }
    }
}

/// Largest `T` in `[0, Σp]` accepted by `feasible`, assuming `T = 0` is.
fn binary_search(hi: u64, mut feasible: impl FnMut(u64) -> Result<bool>) -> Result<u64> {
    let (mut lo, mut hi) = (0u64, hi);
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if feasible(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// Binary search for the largest target the chosen predicate accepts, then
/// the assignment at that target.
pub fn solve(inst: &SantaInstance, options: &SolveOptions) -> Result<SantaSolution> {
    Ok(solve_with_trace(inst, options, None)?.0)
}

/// As [`solve`]; the final run at the chosen target reports to `trace`.
/// Also returns the targets probed, in order.
pub fn solve_with_trace(
    inst: &SantaInstance,
    options: &SolveOptions,
    trace: Option<&mut dyn TraceSink>,
) -> Result<(SantaSolution, Vec<u64>)> {
    let mut probes = Vec::new();
    let total = inst.total_value();
    let mut cache = BTreeMap::new();
    let target = match options.search {
        SearchMode::Solver => binary_search(total, |t| {
            probes.push(t);
            let found = solve_at(inst, t, options, None)?;
            let ok = found.is_some();
            cache.insert(t, found);
            Ok(ok)
        })?,
        SearchMode::Lp => {
            let t_lp = binary_search(total, |t| {
                probes.push(t);
                let partition = partition_gifts(inst, t, options.partition)?;
                oracle::lp_feasible_partition(inst, &partition)
            })?;
            // the solver completes whenever the relaxation is feasible; if it
            // does not, fall back to searching below the LP optimum
            let found = if t_lp == 0 {
                None
            } else {
                solve_at(inst, t_lp, options, None)?
            };
            match found {
                Some(sol) => {
                    cache.insert(t_lp, Some(sol));
                    t_lp
                }
                None if t_lp == 0 => 0,
                None => binary_search(t_lp - 1, |t| {
                    probes.push(t);
                    let found = solve_at(inst, t, options, None)?;
                    let ok = found.is_some();
                    cache.insert(t, found);
                    Ok(ok)
                })?,
            }
        }
    };
    if target == 0 {
        return Ok((empty_solution(inst, options), probes));
    }
    let solution = match trace {
        Some(sink) => solve_at(inst, target, options, Some(sink))?,
        None => cache.remove(&target).flatten(),
    };
    let solution = solution.ok_or_else(|| Error::Internal(format!("no solution at T = {target}")))?;
    Ok((solution, probes))
}
