//! The augmenting-tree algorithm for matroid max-min allocation.
//!
//! [`run`] grows a basis one element at a time. Each phase starts with an
//! independent set `S` whose elements except the exposed `i₀` are covered by
//! a hypergraph matching `M` of `β`-edges, and ends with `|S|` unchanged and
//! every element covered. Inside a phase, [`Solver::run_phase`] alternates an
//! expansion step (a greedy matching `H` of `α`-edges) with either a new
//! layer of blocking edges or a collapse that swaps a slice of one layer's
//! elements for newly coverable ones. A signature vector of the layer sizes
//! decreases lexicographically every iteration.

mod signature;
mod state;
mod trace;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::{augment_in_order, find_swap_out, ElementId, ElementSet, Matroid};
use crate::model::{
    build_minimal_edge, shrink_to_beta_edge, AllocationInstance, HyperEdge, SolverParams,
};
use crate::rational::{self, Rational};

pub use signature::SignatureVector;
pub use state::{Layer, SolverState};
pub use trace::{TraceEvent, TraceKind, TraceSink};

/// Which layer a collapse targets.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollapseStrategy {
    /// Smallest layer holding at least a `γ` fraction of `C'`.
    #[default]
    SmallestQualifying,
    /// Layer with the largest overlap with `C'` (ties to the smaller index).
    LargestOverlap,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    pub collapse: CollapseStrategy,
    /// Re-check the state invariants and the progress bounds after every
    /// iteration; a violation aborts with [`Error::Internal`].
    pub check_invariants: bool,
    /// Drop adding edges whose blocking edges were all swapped out by a
    /// collapse, keeping `|A_j| ≤ |B_j|` for every layer. With `false` the
    /// collapsed layer keeps all of `A_ℓ̃`, and the tree can hold more value
    /// than the expansion bound allows.
    pub prune_orphaned_adding: bool,
    pub max_iterations: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            collapse: CollapseStrategy::default(),
            check_invariants: cfg!(debug_assertions),
            prune_orphaned_adding: true,
            max_iterations: 10_000_000,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverStats {
    pub phases: usize,
    pub iterations: u64,
    pub max_layers: usize,
    pub collapses: u64,
    pub layers_built: u64,
    /// Iterations where the signature failed to decrease strictly.
    pub signature_violations: u64,
    /// Collapses removing fewer than `max(1, ⌈c·γ·|B_{≤ℓ̃}|⌉)` blocking edges.
    pub shrink_violations: u64,
    /// New layers smaller than `max(1, ⌈c·|C|⌉)`.
    pub growth_violations: u64,
    /// Layer counts above `⌈log|X| / log(1+c)⌉`.
    pub layer_bound_violations: u64,
}

impl SolverStats {
    pub fn violations(&self) -> u64 {
        self.signature_violations
            + self.shrink_violations
            + self.growth_violations
            + self.layer_bound_violations
    }

    pub fn absorb(&mut self, other: &SolverStats) {
        self.phases += other.phases;
        self.iterations += other.iterations;
        self.max_layers = self.max_layers.max(other.max_layers);
        self.collapses += other.collapses;
        self.layers_built += other.layers_built;
        self.signature_violations += other.signature_violations;
        self.shrink_violations += other.shrink_violations;
        self.growth_violations += other.growth_violations;
        self.layer_bound_violations += other.layer_bound_violations;
    }
}

/// A basis and a matching of `β`-edges covering it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub basis: ElementSet,
    /// One edge per basis element, ordered by owner.
    pub matching: Vec<HyperEdge>,
    pub stats: SolverStats,
}

impl Solution {
    /// Smallest edge value (`None` for an empty basis).
    pub fn min_value(&self) -> Option<u64> {
        self.matching.iter().map(|e| e.value).min()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StuckStep {
    Expansion,
}

/// The expansion greedy fell short of its size target. For a correct run
/// this certifies that the LP relaxation at the target `T` is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stuck {
    pub step: StuckStep,
    pub phase: usize,
    pub exposed: ElementId,
    pub discovered: usize,
    pub reached: usize,
    pub needed: usize,
    pub stats: SolverStats,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Solved(Solution),
    Stuck(Stuck),
}

impl Outcome {
    pub fn solution(&self) -> Option<&Solution> {
        match self {
            Outcome::Solved(s) => Some(s),
            Outcome::Stuck(_) => None,
        }
    }

    pub fn is_stuck(&self) -> bool {
        matches!(self, Outcome::Stuck(_))
    }

    pub fn stats(&self) -> &SolverStats {
        match self {
            Outcome::Solved(s) => &s.stats,
            Outcome::Stuck(s) => &s.stats,
        }
    }
}

/// Result of one phase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseOutcome {
    Completed {
        basis: ElementSet,
        matching: BTreeMap<ElementId, HyperEdge>,
    },
    Stuck {
        discovered: usize,
        reached: usize,
        needed: usize,
    },
}

/// Output of the expansion step: disjoint `α`-edges `H` covering `D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub edges: Vec<HyperEdge>,
    pub covered: ElementSet,
    pub needed: usize,
}

/// What one loop iteration did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Advance {
    LayerBuilt { blocking: usize },
    Collapsed { layer: usize, before: usize, after: usize },
    Completed {
        basis: ElementSet,
        matching: BTreeMap<ElementId, HyperEdge>,
    },
}

/// Runs the solver with default options, deriving `δ` from the instance.
pub fn run<M: Matroid + ?Sized>(
    matroid: &M,
    instance: &AllocationInstance,
    epsilon: Rational,
) -> Result<Outcome> {
    let params = if instance.resource_count() == 0 {
        SolverParams::with_delta(instance, Rational::from_integer(0), epsilon)?
    } else {
        SolverParams::derive(instance, epsilon)?
    };
    Solver::new(matroid, instance, params).run()
}

pub struct Solver<'a, M: ?Sized> {
    matroid: &'a M,
    instance: &'a AllocationInstance,
    params: SolverParams,
    options: SolverOptions,
    trace: Option<&'a mut dyn TraceSink>,
    stats: SolverStats,
    phase: usize,
    sentinel: i64,
}

impl<'a, M: Matroid + ?Sized> Solver<'a, M> {
    pub fn new(matroid: &'a M, instance: &'a AllocationInstance, params: SolverParams) -> Self {
        let sentinel = SignatureVector::sentinel_for(&params.sig_base, instance.element_count());
        Self {
            matroid,
            instance,
            params,
            options: SolverOptions::default(),
            trace: None,
            stats: SolverStats::default(),
            phase: 0,
            sentinel,
        }
    }

    pub fn with_options(mut self, options: SolverOptions) -> Self {
        self.options = options;
        self
    }

    pub fn with_trace(mut self, sink: &'a mut dyn TraceSink) -> Self {
        self.trace = Some(sink);
        self
    }

    pub fn params(&self) -> &SolverParams {
        &self.params
    }

    pub fn stats(&self) -> &SolverStats {
        &self.stats
    }

    /// `rank(M)` phases, each adding the lowest-index element that keeps `S`
    /// independent.
    pub fn run(mut self) -> Result<Outcome> {
        if self.matroid.ground_size() != self.instance.element_count() {
            return Err(Error::InvalidInput(format!(
                "matroid ground set has {} elements, instance has {}",
                self.matroid.ground_size(),
                self.instance.element_count()
            )));
        }
        let rank = self.matroid.full_rank();
        let mut basis = ElementSet::new();
        let mut matching = BTreeMap::new();
        for phase in 0..rank {
            self.phase = phase;
            let exposed = (0..self.matroid.ground_size())
                .map(ElementId::from)
                .find(|i| {
                    !basis.contains(i) && {
                        let mut grown = basis.clone();
                        grown.insert(*i);
                        self.matroid.independent(&grown)
                    }
                })
                .ok_or_else(|| Error::Internal("no element extends a non-basis".into()))?;
            basis.insert(exposed);
            let state = SolverState::new(basis.clone(), exposed, matching.clone());
            self.stats.phases += 1;
            match self.run_phase(state)? {
                PhaseOutcome::Completed {
                    basis: b,
                    matching: m,
                } => {
                    basis = b;
                    matching = m;
                }
                PhaseOutcome::Stuck {
                    discovered,
                    reached,
                    needed,
                } => {
                    return Ok(Outcome::Stuck(Stuck {
                        step: StuckStep::Expansion,
                        phase,
                        exposed,
                        discovered,
                        reached,
                        needed,
                        stats: self.stats,
                    }));
                }
            }
        }
        Ok(Outcome::Solved(Solution {
            basis,
            matching: matching.into_values().collect(),
            stats: self.stats,
        }))
    }

    /// Loops expansion and case split until `i₀` is covered.
    pub fn run_phase(&mut self, mut state: SolverState) -> Result<PhaseOutcome> {
        self.emit(TraceKind::PhaseStart, &state, |e| e.exposed = Some(state.exposed.0));
        loop {
            if self.stats.iterations >= self.options.max_iterations {
                return Err(Error::Internal(format!(
                    "iteration limit {} reached",
                    self.options.max_iterations
                )));
            }
            self.stats.iterations += 1;
            let before = self.signature(&state);
            let expansion = self.expansion_step(&state)?;
            self.emit(TraceKind::Expansion, &state, |e| e.hyper = Some(expansion.edges.len()));
            if expansion.covered.len() < expansion.needed {
                return Ok(PhaseOutcome::Stuck {
                    discovered: state.discovered().len(),
                    reached: expansion.covered.len(),
                    needed: expansion.needed,
                });
            }
            match self.classify_and_advance(&mut state, expansion)? {
                Advance::Completed { basis, matching } => {
                    let done = SolverState::new(basis.clone(), state.exposed, matching.clone());
                    self.emit(TraceKind::PhaseDone, &done, |_| {});
                    return Ok(PhaseOutcome::Completed { basis, matching });
                }
                Advance::LayerBuilt { blocking } => {
                    self.emit(TraceKind::LayerBuilt, &state, |e| e.blocking_new = Some(blocking));
                }
                Advance::Collapsed {
                    layer,
                    before,
                    after,
                } => {
                    self.emit(TraceKind::Collapse, &state, |e| {
                        e.target_layer = Some(layer);
                        e.blocking_before = Some(before);
                        e.blocking_after = Some(after);
                    });
                }
            }
            self.stats.max_layers = self.stats.max_layers.max(state.layers.len());
            if state.layers.len() > self.params.layer_bound(self.instance.element_count()) {
                self.stats.layer_bound_violations += 1;
                self.violation("layer count above bound")?;
            }
            let after = self.signature(&state);
            self.emit(TraceKind::Signature, &state, |e| e.signature = Some(after.as_vec()));
            if after >= before {
                self.stats.signature_violations += 1;
                self.violation(&format!(
                    "signature did not decrease: {:?} -> {:?}",
                    before.as_vec(),
                    after.as_vec()
                ))?;
            }
            if self.options.check_invariants {
                state
                    .check(self.matroid, self.instance)
                    .map_err(|m| Error::Internal(format!("state invariant: {m}")))?;
            }
        }
    }

    /// Greedy matching `H` of `α`-edges on `(X \ S) ∪ C`, avoiding the tree's
    /// resources, with `(S \ C) ∪ D` independent. Stops at
    /// `max(1, ⌈ε·|C|⌉)` edges; falls short only when no candidate is left.
    pub fn expansion_step(&self, state: &SolverState) -> Result<Expansion> {
        let discovered = state.discovered();
        let needed = rational::ceil_at_least_one(&self.params.expansion_ratio, discovered.len());
        let mut forbidden = state.tree_resources(self.instance);
        let mut independent: ElementSet = state.basis.difference(&discovered).copied().collect();
        let mut edges = Vec::new();
        let mut covered = ElementSet::new();
        for i in (0..self.matroid.ground_size()).map(ElementId::from) {
            if covered.len() >= needed {
                break;
            }
            if state.basis.contains(&i) && !discovered.contains(&i) {
                continue;
            }
            let Some(edge) =
                build_minimal_edge(self.instance, i, self.params.alpha_threshold(), &forbidden)?
            else {
                continue;
            };
            independent.insert(i);
            if !self.matroid.independent(&independent) {
                independent.remove(&i);
                continue;
            }
            edge.mark(&mut forbidden);
            covered.insert(i);
            edges.push(edge);
        }
        Ok(Expansion {
            edges,
            covered,
            needed,
        })
    }

    /// Case 1 builds a new layer from the matching edges `H` runs into; case 2
    /// swaps part of one layer for newly coverable elements, or finishes the
    /// phase when `i₀` itself can be swapped.
    pub fn classify_and_advance(
        &mut self,
        state: &mut SolverState,
        expansion: Expansion,
    ) -> Result<Advance> {
        let hyper = expansion.edges;
        let mut hyper_mask = self.instance.empty_mask();
        for e in &hyper {
            e.mark(&mut hyper_mask);
        }
        let overlap_needed = rational::ceil_at_least_one(&self.params.case1_ratio, hyper.len());
        let blocked: Vec<ElementId> = state
            .matching
            .values()
            .filter(|m| m.overlaps(&hyper_mask))
            .map(|m| m.owner)
            .collect();

        if blocked.len() >= overlap_needed {
            let discovered = state.discovered().len();
            let mut layer = Layer::default();
            let mut chosen = ElementSet::new();
            for b in &blocked {
                let mut b_mask = self.instance.empty_mask();
                state.matching[b].mark(&mut b_mask);
                let h = hyper
                    .iter()
                    .find(|h| h.overlaps(&b_mask))
                    .expect("blocked edge meets some edge of H");
                layer.chosen_for.insert(*b, h.owner);
                if chosen.insert(h.owner) {
                    layer.adding.push(h.clone());
                }
                layer.blocking.insert(*b);
            }
            let growth = rational::ceil_at_least_one(&self.params.layer_growth, discovered);
            if layer.blocking.len() < growth {
                self.stats.growth_violations += 1;
                self.violation("new layer below growth bound")?;
            }
            if layer.adding.len() > layer.blocking.len() {
                self.violation("new layer has |A| > |B|")?;
            }
            let blocking = layer.blocking.len();
            state.layers.push(layer);
            self.stats.layers_built += 1;
            return Ok(Advance::LayerBuilt { blocking });
        }

        // case 2: edges keeping value βT outside M_W, shrunk to β-edges
        let occupied = state.matching_resources(self.instance);
        let shrunk: BTreeMap<ElementId, HyperEdge> = hyper
            .iter()
            .filter_map(|e| shrink_to_beta_edge(self.instance, &self.params, e, &occupied))
            .map(|e| (e.owner, e))
            .collect();
        if shrunk.len() < overlap_needed {
            return Err(Error::Internal(format!(
                "neither case applies: |H| = {}, {} blocked, {} free",
                hyper.len(),
                blocked.len(),
                shrunk.len()
            )));
        }
        let d_prime: ElementSet = shrunk.keys().copied().collect();
        let discovered = state.discovered();
        let c_prime = find_swap_out(self.matroid, &state.basis, &discovered, &d_prime)?;

        if c_prime.contains(&state.exposed) {
            let mut rest = state.basis.clone();
            rest.remove(&state.exposed);
            let i1 = d_prime
                .iter()
                .copied()
                .find(|i| {
                    !rest.contains(i) && {
                        let mut s = rest.clone();
                        s.insert(*i);
                        self.matroid.independent(&s)
                    }
                })
                .ok_or_else(|| Error::Internal("no element of D' replaces i0".into()))?;
            rest.insert(i1);
            let mut matching = state.matching.clone();
            matching.insert(i1, shrunk[&i1].clone());
            return Ok(Advance::Completed {
                basis: rest,
                matching,
            });
        }

        let layer = self.find_collapsible_layer(state, &c_prime)?;
        let take = rational::ceil_at_least_one(&self.params.gamma, c_prime.len());
        let c_tilde: ElementSet = c_prime
            .iter()
            .filter(|i| state.layers[layer - 1].blocking.contains(i))
            .take(take)
            .copied()
            .collect();
        let kept: ElementSet = state.basis.difference(&c_tilde).copied().collect();
        let pool = d_prime.iter().filter(|i| !kept.contains(i)).copied();
        let grown = augment_in_order(self.matroid, kept.clone(), pool, state.basis.len())
            .map_err(|e| Error::Internal(format!("no swap-in set for the collapse: {e}")))?;
        let d_tilde: ElementSet = grown.difference(&kept).copied().collect();

        let before: usize = state.blocking_prefix_sizes()[layer - 1];
        for c in &c_tilde {
            state.matching.remove(c);
        }
        for d in &d_tilde {
            state.matching.insert(*d, shrunk[d].clone());
        }
        state.basis = grown;
        state.layers.truncate(layer);
        let top = &mut state.layers[layer - 1];
        for c in &c_tilde {
            top.blocking.remove(c);
            top.chosen_for.remove(c);
        }
        if self.options.prune_orphaned_adding {
            let still_used: ElementSet = top.chosen_for.values().copied().collect();
            top.adding.retain(|a| still_used.contains(&a.owner));
        }
        let after = state.blocking_prefix_sizes()[layer - 1];
        self.stats.collapses += 1;
        let required = rational::ceil_at_least_one(
            &(self.params.layer_growth * self.params.gamma),
            before,
        );
        if after + required > before {
            self.stats.shrink_violations += 1;
            self.violation("collapse removed too few blocking edges")?;
        }
        Ok(Advance::Collapsed {
            layer,
            before,
            after,
        })
    }

    /// 1-based index of the layer to collapse into.
    pub fn find_collapsible_layer(&self, state: &SolverState, c_prime: &ElementSet) -> Result<usize> {
        let overlaps: Vec<usize> = state
            .layers
            .iter()
            .map(|l| c_prime.iter().filter(|i| l.blocking.contains(i)).count())
            .collect();
        let qualifies =
            |count: usize| count > 0 && rational::at_least_fraction(count, &self.params.gamma, c_prime.len());
        let choice = match self.options.collapse {
            CollapseStrategy::SmallestQualifying => overlaps.iter().position(|&n| qualifies(n)),
            CollapseStrategy::LargestOverlap => overlaps
                .iter()
                .enumerate()
                .filter(|(_, &n)| qualifies(n))
                .max_by(|a, b| a.1.cmp(b.1).then(b.0.cmp(&a.0)))
                .map(|(k, _)| k),
        };
        choice.map(|k| k + 1).ok_or_else(|| {
            Error::Internal(format!(
                "no layer holds a γ-fraction of C' (|C'| = {}, overlaps {overlaps:?})",
                c_prime.len()
            ))
        })
    }

    pub fn signature(&self, state: &SolverState) -> SignatureVector {
        SignatureVector::from_prefix_sizes(
            &self.params.sig_base,
            &state.blocking_prefix_sizes(),
            self.sentinel,
        )
    }

    fn violation(&self, message: &str) -> Result<()> {
        if self.options.check_invariants {
            Err(Error::Internal(message.to_string()))
        } else {
            Ok(())
        }
    }

    fn emit(&mut self, kind: TraceKind, state: &SolverState, fill: impl FnOnce(&mut TraceEvent)) {
        let Some(sink) = self.trace.as_deref_mut() else {
            return;
        };
        let mut event = TraceEvent::new(kind);
        event.phase = self.phase;
        event.iteration = self.stats.iterations;
        event.basis = state.basis.len();
        event.matching = state.matching.len();
        event.discovered = state.discovered().len();
        event.layers = state.layers.len();
        fill(&mut event);
        sink.record(event);
    }
}
