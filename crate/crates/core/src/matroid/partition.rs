use super::{ElementSet, Matroid};
use crate::error::{Error, Result};

/// Ground set split into blocks; a set is independent iff it takes at most
/// `capacity[b]` elements from each block `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionMatroid {
    block_of: Vec<usize>,
    capacities: Vec<usize>,
}

impl PartitionMatroid {
    pub fn new(block_of: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        if let Some(&b) = block_of.iter().find(|&&b| b >= capacities.len()) {
            return Err(Error::InvalidInput(format!(
                "block {b} has no capacity (only {} blocks)",
                capacities.len()
            )));
        }
        Ok(Self {
            block_of,
            capacities,
        })
    }

    pub fn block_of(&self) -> &[usize] {
        &self.block_of
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }
}

impl Matroid for PartitionMatroid {
    fn ground_size(&self) -> usize {
        self.block_of.len()
    }

    fn independent(&self, set: &ElementSet) -> bool {
        let mut used = vec![0usize; self.capacities.len()];
        set.iter().all(|e| {
            let b = self.block_of[e.index()];
            used[b] += 1;
            used[b] <= self.capacities[b]
        })
    }

    fn rank_of(&self, set: &ElementSet) -> usize {
        let mut used = vec![0usize; self.capacities.len()];
        for e in set {
            used[self.block_of[e.index()]] += 1;
        }
        used.iter()
            .zip(&self.capacities)
            .map(|(u, c)| (*u).min(*c))
            .sum()
    }
}
