use super::{check_subset, ElementId, ElementSet, Matroid};
use crate::error::{Error, Result};
use crate::matching;

/// Exchange graph `H(Y, Z)` of two independent sets.
///
/// Left vertices are the elements of `Y`, right vertices the elements of `Z`
/// (elements of `Y ∩ Z` appear once on each side). For `i ∈ Y ∩ Z` the only
/// edge joins the two copies of `i`; for `i ∈ Y \ Z`, `j ∈ Z \ Y` the edge
/// `(i, j)` exists iff `Y - i + j` is independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExchangeGraph {
    left: Vec<ElementId>,
    right: Vec<ElementId>,
    /// `adjacency[k]` lists right indices adjacent to `left[k]`.
    adjacency: Vec<Vec<usize>>,
}

impl ExchangeGraph {
    pub fn build<M: Matroid + ?Sized>(matroid: &M, y: &ElementSet, z: &ElementSet) -> Result<Self> {
        check_subset(matroid, y)?;
        check_subset(matroid, z)?;
        if !matroid.independent(y) || !matroid.independent(z) {
            return Err(Error::InvalidInput(
                "exchange graph needs independent sets".into(),
            ));
        }
        let left: Vec<ElementId> = y.iter().copied().collect();
        let right: Vec<ElementId> = z.iter().copied().collect();
        let adjacency = left
            .iter()
            .map(|&i| {
                if z.contains(&i) {
                    return vec![right.binary_search(&i).unwrap()];
                }
                right
                    .iter()
                    .enumerate()
                    .filter(|(_, j)| !y.contains(j))
                    .filter(|(_, &j)| {
                        let mut swapped = y.clone();
                        swapped.remove(&i);
                        swapped.insert(j);
                        matroid.independent(&swapped)
                    })
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        Ok(Self {
            left,
            right,
            adjacency,
        })
    }

    pub fn left(&self) -> &[ElementId] {
        &self.left
    }

    pub fn right(&self) -> &[ElementId] {
        &self.right
    }

    pub fn edges(&self) -> impl Iterator<Item = (ElementId, ElementId)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(move |(k, row)| row.iter().map(move |&r| (self.left[k], self.right[r])))
    }

    pub fn adjacency(&self) -> &[Vec<usize>] {
        &self.adjacency
    }

    pub fn has_left_perfect_matching(&self) -> bool {
        let active: Vec<usize> = (0..self.left.len()).collect();
        matching::saturates(&self.adjacency, self.right.len(), &active)
    }
}
