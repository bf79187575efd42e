//! Matroid max-min allocation instances, solver parameters and minimal
//! hyperedges.
//!
//! All comparisons against thresholds `ν·T` are exact: values and targets are
//! integers and thresholds are [`Rational`]s.

use std::cmp::Reverse;
use std::fmt;

use fixedbitset::FixedBitSet;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matroid::ElementId;
use crate::rational::{self, Rational};

/// Set of resources, indexed by [`ResourceId`].
pub type ResourceMask = FixedBitSet;

/// Dense index of a (positive-valued) resource.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ResourceId(pub u32);

impl ResourceId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for ResourceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Bipartite graph between ground elements `X` and resources `W`, resource
/// values `p_w` and an integral target `T`.
///
/// Resources of value zero are dropped on construction; `label(w)` recovers
/// the position of a kept resource in the input list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AllocationInstance {
    values: Vec<u64>,
    labels: Vec<usize>,
    neighbors: Vec<Vec<ResourceId>>,
    target: u64,
}

impl AllocationInstance {
    /// `neighbors[i]` lists input-resource indices adjacent to element `i`.
    pub fn new(values: Vec<u64>, neighbors: Vec<Vec<usize>>, target: u64) -> Result<Self> {
        let mut dense = vec![None; values.len()];
        let mut kept_values = Vec::new();
        let mut labels = Vec::new();
        for (w, &p) in values.iter().enumerate() {
            if p > 0 {
                dense[w] = Some(ResourceId(kept_values.len() as u32));
                kept_values.push(p);
                labels.push(w);
            }
        }
        let neighbors = neighbors
            .into_iter()
            .enumerate()
            .map(|(i, row)| {
                let mut mapped = Vec::with_capacity(row.len());
                for w in row {
                    let slot = dense.get(w).ok_or_else(|| {
                        Error::InvalidInstance(format!("element {i} adjacent to unknown resource {w}"))
                    })?;
                    mapped.extend(*slot);
                }
                mapped.sort_unstable();
                mapped.dedup();
                Ok(mapped)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            values: kept_values,
            labels,
            neighbors,
            target,
        })
    }

    pub fn element_count(&self) -> usize {
        self.neighbors.len()
    }

    pub fn resource_count(&self) -> usize {
        self.values.len()
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn with_target(&self, target: u64) -> Self {
        Self {
            target,
            ..self.clone()
        }
    }

    pub fn value(&self, w: ResourceId) -> u64 {
        self.values[w.index()]
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Input index of a kept resource.
    pub fn label(&self, w: ResourceId) -> usize {
        self.labels[w.index()]
    }

    pub fn neighbors(&self, i: ElementId) -> &[ResourceId] {
        &self.neighbors[i.index()]
    }

    pub fn max_value(&self) -> u64 {
        self.values.iter().copied().max().unwrap_or(0)
    }

    pub fn total_value<'a, I: IntoIterator<Item = &'a ResourceId>>(&self, resources: I) -> u64 {
        resources.into_iter().map(|w| self.value(*w)).sum()
    }

    pub fn empty_mask(&self) -> ResourceMask {
        FixedBitSet::with_capacity(self.values.len())
    }

    pub(crate) fn check_element(&self, i: ElementId) -> Result<()> {
        if i.index() >= self.element_count() {
            return Err(Error::InvalidInput(format!(
                "element {i} outside ground set of size {}",
                self.element_count()
            )));
        }
        Ok(())
    }
}

/// A hyperedge `(owner, U)`: resources `U ⊆ N(owner)` that are
/// inclusion-minimal with value at least the threshold they were built for.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HyperEdge {
    pub owner: ElementId,
    pub resources: Vec<ResourceId>,
    pub value: u64,
}

impl HyperEdge {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn overlaps(&self, mask: &ResourceMask) -> bool {
        self.resources.iter().any(|w| mask.contains(w.index()))
    }

    pub fn mark(&self, mask: &mut ResourceMask) {
        for w in &self.resources {
            mask.insert(w.index());
        }
    }
}

/// Sum of resource values of an edge.
pub fn edge_value(instance: &AllocationInstance, resources: &[ResourceId]) -> u64 {
    instance.total_value(resources)
}

/// Minimal edge for `owner` over `N(owner) \ forbidden` with value at least
/// `threshold`, or `None` if the available value falls short.
///
/// Takes resources by descending value (ties by ascending id) until the
/// threshold is met, then makes one reverse pass dropping every resource
/// whose removal keeps the threshold.
pub fn build_minimal_edge(
    instance: &AllocationInstance,
    owner: ElementId,
    threshold: &Rational,
    forbidden: &ResourceMask,
) -> Result<Option<HyperEdge>> {
    instance.check_element(owner)?;
    Ok(minimal_edge(
        instance,
        owner,
        instance
            .neighbors(owner)
            .iter()
            .copied()
            .filter(|w| !forbidden.contains(w.index())),
        threshold,
    ))
}

/// Minimal `β`-edge inside `edge` avoiding `occupied`.
pub fn shrink_to_beta_edge(
    instance: &AllocationInstance,
    params: &SolverParams,
    edge: &HyperEdge,
    occupied: &ResourceMask,
) -> Option<HyperEdge> {
    minimal_edge(
        instance,
        edge.owner,
        edge.resources
            .iter()
            .copied()
            .filter(|w| !occupied.contains(w.index())),
        params.beta_threshold(),
    )
}

pub(crate) fn minimal_edge<I>(
    instance: &AllocationInstance,
    owner: ElementId,
    candidates: I,
    threshold: &Rational,
) -> Option<HyperEdge>
where
    I: Iterator<Item = ResourceId>,
{
    let mut pool: Vec<ResourceId> = candidates.collect();
    pool.sort_by_key(|&w| (Reverse(instance.value(w)), w));
    let mut chosen = Vec::new();
    let mut value = 0u64;
    for w in pool {
        if rational::meets(value, threshold) {
            break;
        }
        value += instance.value(w);
        chosen.push(w);
    }
    if !rational::meets(value, threshold) {
        return None;
    }
    let mut keep = vec![true; chosen.len()];
    for k in (0..chosen.len()).rev() {
        let reduced = value - instance.value(chosen[k]);
        if rational::meets(reduced, threshold) {
            value = reduced;
            keep[k] = false;
        }
    }
    let mut resources: Vec<ResourceId> = chosen
        .into_iter()
        .zip(keep)
        .filter_map(|(w, k)| k.then_some(w))
        .collect();
    resources.sort_unstable();
    Some(HyperEdge {
        owner,
        resources,
        value,
    })
}

/// Constants of the augmenting-tree algorithm, all exact.
///
/// With `δ` the largest resource value relative to `T`:
/// `β = 1/3 − δ/3 − ε`, `α = 1/3 − δ/3 − ε/2`, layer growth `c = ε²/4`,
/// `γ = 1/(2(k+1))` with `k = ⌈log(2/c) / log(1+c)⌉`, and signature base
/// `1 / (1 − c·γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolverParams {
    pub target: u64,
    pub epsilon: Rational,
    pub delta: Rational,
    pub alpha: Rational,
    pub beta: Rational,
    /// Expansion size ratio (`ε`).
    pub expansion_ratio: Rational,
    /// Case-1 overlap ratio (`ε/4`).
    pub case1_ratio: Rational,
    /// Layer growth constant `c = ε²/4`.
    pub layer_growth: Rational,
    pub k: u64,
    pub gamma: Rational,
    pub sig_base: Rational,
    alpha_threshold: Rational,
    beta_threshold: Rational,
}

impl SolverParams {
    /// Parameters with `δ = max_w p_w / T`.
    pub fn derive(instance: &AllocationInstance, epsilon: Rational) -> Result<Self> {
        let target = instance.target();
        if target == 0 {
            return Err(Error::InvalidInstance("target T must be positive".into()));
        }
        if instance.resource_count() == 0 {
            return Err(Error::InvalidInstance(
                "no resources with positive value and T > 0".into(),
            ));
        }
        let delta = Rational::new(instance.max_value() as i128, target as i128);
        Self::build(target, delta, epsilon)
    }

    /// Parameters with an explicit `δ`, which must bound every resource:
    /// `p_w ≤ δ·T`.
    pub fn with_delta(
        instance: &AllocationInstance,
        delta: Rational,
        epsilon: Rational,
    ) -> Result<Self> {
        let target = instance.target();
        if target == 0 {
            return Err(Error::InvalidInstance("target T must be positive".into()));
        }
        let bound = delta * Rational::from_integer(target as i128);
        if Rational::from_integer(instance.max_value() as i128) > bound {
            return Err(Error::Parameter(format!(
                "resource value {} exceeds δ·T = {}",
                instance.max_value(),
                rational::format_rational(&bound)
            )));
        }
        Self::build(target, delta, epsilon)
    }

    fn build(target: u64, delta: Rational, epsilon: Rational) -> Result<Self> {
        let zero = Rational::zero();
        let one = Rational::one();
        let third = Rational::new(1, 3);
        if delta < zero || delta >= one {
            return Err(Error::Parameter(format!(
                "δ = {} must lie in [0, 1); admissible ε-interval is empty",
                rational::format_rational(&delta)
            )));
        }
        let upper = (one - delta) * third;
        if epsilon <= zero || epsilon >= upper {
            return Err(Error::Parameter(format!(
                "ε = {} outside the admissible interval (0, {})",
                rational::format_rational(&epsilon),
                rational::format_rational(&upper)
            )));
        }
        // everything below in big rationals, narrowed back with overflow checks
        let big = |r: &Rational| rational::to_big(r);
        let eps = big(&epsilon);
        let del = big(&delta);
        let b_third = big(&third);
        let b_one = BigRational::one();
        let beta = &b_third - &del * &b_third - &eps;
        let alpha = &b_third - &del * &b_third - &eps / BigRational::from_integer(2.into());
        let growth = &eps * &eps / BigRational::from_integer(4.into());
        let c = rational::big_to_f64(&growth);
        let k = ((2.0 / c).ln() / c.ln_1p()).ceil().max(0.0) as u64;
        let gamma = BigRational::new(1.into(), (2 * (k as u128 + 1)).into());
        let sig_base = &b_one / (&b_one - &growth * &gamma);
        let t = BigRational::from_integer(target.into());
        let narrow = |value: BigRational, name: &str| -> Result<Rational> {
            match (value.numer().to_i128(), value.denom().to_i128()) {
                (Some(n), Some(d)) => Ok(Rational::new(n, d)),
                _ => Err(Error::Parameter(format!(
                    "{name} = {value} does not fit 128-bit arithmetic; use a coarser ε"
                ))),
            }
        };
        Ok(Self {
            target,
            epsilon,
            delta,
            alpha_threshold: narrow(&alpha * &t, "αT")?,
            beta_threshold: narrow(&beta * &t, "βT")?,
            alpha: narrow(alpha, "α")?,
            beta: narrow(beta, "β")?,
            expansion_ratio: epsilon,
            case1_ratio: epsilon / Rational::from_integer(4),
            layer_growth: narrow(growth, "ε²/4")?,
            k,
            gamma: narrow(gamma, "γ")?,
            sig_base: narrow(sig_base, "signature base")?,
        })
    }

    /// `α·T`.
    pub fn alpha_threshold(&self) -> &Rational {
        &self.alpha_threshold
    }

    /// `β·T`.
    pub fn beta_threshold(&self) -> &Rational {
        &self.beta_threshold
    }

    /// Upper bound on the number of layers: `⌈log|X| / log(1 + ε²/4)⌉`.
    pub fn layer_bound(&self, ground_size: usize) -> usize {
        if ground_size <= 1 {
            return 0;
        }
        let c = *self.layer_growth.numer() as f64 / *self.layer_growth.denom() as f64;
        ((ground_size as f64).ln() / c.ln_1p()).ceil() as usize
    }
}
