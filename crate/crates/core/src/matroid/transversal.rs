use super::{ElementSet, Matroid};
use crate::error::{Error, Result};
use crate::matching;

/// Matchable-set matroid of a bipartite graph: a set of left vertices is
/// independent iff some matching saturates it.
///
/// In the Santa reduction the left side are children and the right side are
/// large gifts, with `adjacency[i]` the gifts child `i` is eligible for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransversalMatroid {
    right_count: usize,
    adjacency: Vec<Vec<usize>>,
}

impl TransversalMatroid {
    pub fn new(left_count: usize, right_count: usize, adjacency: Vec<Vec<usize>>) -> Result<Self> {
        if adjacency.len() != left_count {
            return Err(Error::InvalidInput(format!(
                "adjacency has {} rows for {left_count} left vertices",
                adjacency.len()
            )));
        }
        let mut adjacency = adjacency;
        for row in adjacency.iter_mut() {
            if let Some(&j) = row.iter().find(|&&j| j >= right_count) {
                return Err(Error::InvalidInput(format!(
                    "right vertex {j} out of range {right_count}"
                )));
            }
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self {
            right_count,
            adjacency,
        })
    }

    pub fn right_count(&self) -> usize {
        self.right_count
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    /// A maximum matching of `set` into the right side (`(left, right)` pairs).
    pub fn matching_of(&self, set: &ElementSet) -> Vec<(usize, usize)> {
        let active: Vec<usize> = set.iter().map(|e| e.index()).collect();
        matching::maximum_matching(&self.adjacency, self.right_count, &active)
            .into_iter()
            .enumerate()
            .filter_map(|(u, r)| r.map(|r| (u, r)))
            .collect()
    }
}

impl Matroid for TransversalMatroid {
    fn ground_size(&self) -> usize {
        self.adjacency.len()
    }

    fn independent(&self, set: &ElementSet) -> bool {
        let active: Vec<usize> = set.iter().map(|e| e.index()).collect();
        matching::saturates(&self.adjacency, self.right_count, &active)
    }

    fn rank_of(&self, set: &ElementSet) -> usize {
        let active: Vec<usize> = set.iter().map(|e| e.index()).collect();
        matching::matching_size(&self.adjacency, self.right_count, &active)
    }
}
