use std::collections::{BTreeMap, BTreeSet};

use crate::matroid::{ElementId, ElementSet, Matroid};
use crate::model::{AllocationInstance, HyperEdge, ResourceMask};

/// One layer of the augmenting tree: adding edges `A_j` and the owners of the
/// blocking edges `B_j ⊆ M`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Layer {
    pub adding: Vec<HyperEdge>,
    pub blocking: BTreeSet<ElementId>,
    /// For each blocking owner, the owner of the adding edge chosen for it.
    pub chosen_for: BTreeMap<ElementId, ElementId>,
}

/// State of one phase: `S`, the exposed element `i₀`, the matching `M`
/// (keyed by owner) and the built layers `1..=ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverState {
    pub basis: ElementSet,
    pub exposed: ElementId,
    pub matching: BTreeMap<ElementId, HyperEdge>,
    pub layers: Vec<Layer>,
}

impl SolverState {
    pub fn new(basis: ElementSet, exposed: ElementId, matching: BTreeMap<ElementId, HyperEdge>) -> Self {
        Self {
            basis,
            exposed,
            matching,
            layers: Vec::new(),
        }
    }

    /// `C = B_X ∪ {i₀}`.
    pub fn discovered(&self) -> ElementSet {
        let mut c: ElementSet = self
            .layers
            .iter()
            .flat_map(|l| l.blocking.iter().copied())
            .collect();
        c.insert(self.exposed);
        c
    }

    /// `|B_{≤j}|` for `j = 1..=ℓ`.
    pub fn blocking_prefix_sizes(&self) -> Vec<usize> {
        self.layers
            .iter()
            .scan(0usize, |acc, l| {
                *acc += l.blocking.len();
                Some(*acc)
            })
            .collect()
    }

    pub fn blocking_count(&self) -> usize {
        self.layers.iter().map(|l| l.blocking.len()).sum()
    }

    /// `A_W ∪ B_W`.
    pub fn tree_resources(&self, instance: &AllocationInstance) -> ResourceMask {
        let mut mask = instance.empty_mask();
        for layer in &self.layers {
            for edge in &layer.adding {
                edge.mark(&mut mask);
            }
            for owner in &layer.blocking {
                self.matching[owner].mark(&mut mask);
            }
        }
        mask
    }

    /// `M_W`.
    pub fn matching_resources(&self, instance: &AllocationInstance) -> ResourceMask {
        let mut mask = instance.empty_mask();
        for edge in self.matching.values() {
            edge.mark(&mut mask);
        }
        mask
    }



    /// Checks the phase invariants; returns a description of the first
    /// violation.
    pub fn check<M: Matroid + ?Sized>(
        &self,
        matroid: &M,
        instance: &AllocationInstance,
    ) -> Result<(), String> {
        if !self.basis.contains(&self.exposed) {
            return Err("exposed element not in S".into());
        }
        if !matroid.independent(&self.basis) {
            return Err("S is dependent".into());
        }
        let covered: ElementSet = self.matching.keys().copied().collect();
        let mut expected = self.basis.clone();
        expected.remove(&self.exposed);
        if covered != expected {
            return Err(format!("M_X = {covered:?} differs from S \\ {{i0}} = {expected:?}"));
        }
        let mut used = instance.empty_mask();
        for (owner, edge) in &self.matching {
            if edge.owner != *owner {
                return Err(format!("matching edge keyed by {owner} owned by {}", edge.owner));
            }
            if edge.overlaps(&used) {
                return Err(format!("matching edge of {owner} overlaps another"));
            }
            edge.mark(&mut used);
        }
        // A_j avoids B_{<j} and every other adding edge
        let mut seen_blocking = ElementSet::new();
        let mut blocking_below = instance.empty_mask();
        let mut adding_used = instance.empty_mask();
        for layer in &self.layers {
            for edge in &layer.adding {
                if edge.overlaps(&adding_used) || edge.overlaps(&blocking_below) {
                    return Err(format!("adding edge of {} overlaps the tree", edge.owner));
                }
                edge.mark(&mut adding_used);
            }
            for owner in &layer.blocking {
                let Some(edge) = self.matching.get(owner) else {
                    return Err(format!("blocking owner {owner} not in M"));
                };
                if !seen_blocking.insert(*owner) {
                    return Err(format!("blocking owner {owner} in two layers"));
                }
                edge.mark(&mut blocking_below);
            }
        }
        Ok(())
    }
}
