//! Matroids given by independence oracles.
//!
//! Every matroid implements [`Matroid`]; the free functions in this module
//! ([`is_independent`], [`rank`], [`augment_to_size`], [`find_swap_out`]) add
//! ground-set validation on top of the raw oracle. All scans run in ascending
//! [`ElementId`] order unless stated otherwise, so results are reproducible.

mod any;
mod dual;
mod exchange;
mod partition;
pub mod polytope;
mod transversal;
mod uniform;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use any::AnyMatroid;
pub use dual::DualMatroid;
pub use exchange::ExchangeGraph;
pub use partition::PartitionMatroid;
pub use transversal::TransversalMatroid;
pub use uniform::UniformMatroid;

/// Index of a ground-set element.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(value: usize) -> Self {
        ElementId(value as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

pub type ElementSet = BTreeSet<ElementId>;

/// Builds an [`ElementSet`] from plain indices.
pub fn set_of<I: IntoIterator<Item = usize>>(items: I) -> ElementSet {
    items.into_iter().map(ElementId::from).collect()
}

/// An independence oracle over the ground set `{0, .., ground_size - 1}`.
///
/// Implementations are immutable and may be shared across threads.
pub trait Matroid: Send + Sync {
    fn ground_size(&self) -> usize;

    /// Independence test. Callers guarantee `set` lies inside the ground set.
    fn independent(&self, set: &ElementSet) -> bool;

    /// Size of a largest independent subset of `set`.
    fn rank_of(&self, set: &ElementSet) -> usize {
        let mut basis = ElementSet::new();
        for &e in set {
            basis.insert(e);
            if !self.independent(&basis) {
                basis.remove(&e);
            }
        }
        basis.len()
    }

    fn full_rank(&self) -> usize {
        self.rank_of(&ground_set(self.ground_size()))
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn independent(&self, set: &ElementSet) -> bool {
        (**self).independent(set)
    }
    fn rank_of(&self, set: &ElementSet) -> usize {
        (**self).rank_of(set)
    }
    fn full_rank(&self) -> usize {
        (**self).full_rank()
    }
}

impl<M: Matroid + ?Sized> Matroid for Box<M> {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }
    fn independent(&self, set: &ElementSet) -> bool {
        (**self).independent(set)
    }
    fn rank_of(&self, set: &ElementSet) -> usize {
        (**self).rank_of(set)
    }
    fn full_rank(&self) -> usize {
        (**self).full_rank()
    }
}

pub fn ground_set(size: usize) -> ElementSet {
    (0..size).map(ElementId::from).collect()
}

pub(crate) fn check_subset<M: Matroid + ?Sized>(matroid: &M, set: &ElementSet) -> Result<()> {
    match set.iter().next_back() {
        Some(e) if e.index() >= matroid.ground_size() => Err(Error::InvalidInput(format!(
            "element {e} outside ground set of size {}",
            matroid.ground_size()
        ))),
        _ => Ok(()),
    }
}

pub fn is_independent<M: Matroid + ?Sized>(matroid: &M, set: &ElementSet) -> Result<bool> {
    check_subset(matroid, set)?;
    Ok(matroid.independent(set))
}

pub fn rank<M: Matroid + ?Sized>(matroid: &M, set: &ElementSet) -> Result<usize> {
    check_subset(matroid, set)?;
    Ok(matroid.rank_of(set))
}

/// Grows the independent set `base` to exactly `target` elements, adding
/// elements of `pool` in ascending order whenever independence is kept.
pub fn augment_to_size<M: Matroid + ?Sized>(
    matroid: &M,
    base: &ElementSet,
    pool: &ElementSet,
    target: usize,
) -> Result<ElementSet> {
    check_subset(matroid, base)?;
    check_subset(matroid, pool)?;
    if !matroid.independent(base) {
        return Err(Error::InvalidInput("augmentation base is dependent".into()));
    }
    if base.len() > target {
        return Err(Error::InvalidInput(format!(
            "base has {} elements, more than target {target}",
            base.len()
        )));
    }
    augment_in_order(matroid, base.clone(), pool.iter().copied(), target)
}

pub(crate) fn augment_in_order<M, I>(
    matroid: &M,
    mut set: ElementSet,
    pool: I,
    target: usize,
) -> Result<ElementSet>
where
    M: Matroid + ?Sized,
    I: IntoIterator<Item = ElementId>,
{
    for e in pool {
        if set.len() >= target {
            break;
        }
        if set.insert(e) && !matroid.independent(&set) {
            set.remove(&e);
        }
    }
    if set.len() == target {
        Ok(set)
    } else {
        Err(Error::AugmentationFailed {
            reached: set.len(),
            target,
        })
    }
}

/// Finds `C' ⊆ C` with `|C'| = |D|` such that `(S \ C') ∪ D` is independent.
///
/// Starts from `(S \ C) ∪ D` and adds back elements of `C` in descending id
/// order until the set has `|S|` elements; the elements of `C` left out, plus
/// those of `C` that reappear in `D`, form `C'`. Low ids are therefore the
/// first to be swapped out.
pub fn find_swap_out<M: Matroid + ?Sized>(
    matroid: &M,
    s: &ElementSet,
    c: &ElementSet,
    d: &ElementSet,
) -> Result<ElementSet> {
    check_subset(matroid, s)?;
    check_subset(matroid, d)?;
    if !c.is_subset(s) {
        return Err(Error::InvalidState("C is not a subset of S".into()));
    }
    if d.iter().any(|e| s.contains(e) && !c.contains(e)) {
        return Err(Error::InvalidState("D meets S outside C".into()));
    }
    if d.len() > c.len() {
        return Err(Error::InvalidState(format!(
            "|D| = {} exceeds |C| = {}",
            d.len(),
            c.len()
        )));
    }
    if !matroid.independent(s) {
        return Err(Error::InvalidState("S is dependent".into()));
    }
    let start: ElementSet = s.difference(c).chain(d.iter()).copied().collect();
    if !matroid.independent(&start) {
        return Err(Error::InvalidState("(S \\ C) ∪ D is dependent".into()));
    }
    let pool = c.iter().rev().filter(|e| !d.contains(e)).copied();
    let kept = augment_in_order(matroid, start, pool, s.len())
        .map_err(|e| Error::InvalidState(format!("swap-out augmentation: {e}")))?;
    Ok(s.iter()
        .filter(|e| !kept.contains(e) || d.contains(e))
        .copied()
        .collect())
}

/// All bases, in lexicographic bitmask order. Guarded to ground sets of at most 20.
pub fn bases<M: Matroid + ?Sized>(matroid: &M) -> Result<Vec<ElementSet>> {
    let n = matroid.ground_size();
    Error::guard("ground set size for basis enumeration", n, 20)?;
    let r = matroid.full_rank();
    Ok((0u32..1 << n)
        .filter(|mask| mask.count_ones() as usize == r)
        .map(|mask| mask_to_set(mask, n))
        .filter(|set| matroid.independent(set))
        .collect())
}

/// All independent sets. Guarded to ground sets of at most 20.
pub fn independent_sets<M: Matroid + ?Sized>(matroid: &M) -> Result<Vec<ElementSet>> {
    let n = matroid.ground_size();
    Error::guard("ground set size for enumeration", n, 20)?;
    Ok((0u32..1 << n)
        .map(|mask| mask_to_set(mask, n))
        .filter(|set| matroid.independent(set))
        .collect())
}

pub(crate) fn mask_to_set(mask: u32, n: usize) -> ElementSet {
    (0..n)
        .filter(|i| mask >> i & 1 == 1)
        .map(ElementId::from)
        .collect()
}
