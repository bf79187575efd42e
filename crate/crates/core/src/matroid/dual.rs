use super::{ground_set, ElementSet, Matroid};

/// The dual (co-)matroid: `S` is independent iff the primal has a basis
/// disjoint from `S`, i.e. `rank(X \ S) = rank(X)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualMatroid<M> {
    primal: M,
    primal_rank: usize,
}

impl<M: Matroid> DualMatroid<M> {
    pub fn new(primal: M) -> Self {
        let primal_rank = primal.full_rank();
        Self {
            primal,
            primal_rank,
        }
    }

    pub fn primal(&self) -> &M {
        &self.primal
    }

    pub fn primal_rank(&self) -> usize {
        self.primal_rank
    }

    fn complement(&self, set: &ElementSet) -> ElementSet {
        ground_set(self.primal.ground_size())
            .difference(set)
            .copied()
            .collect()
    }
}

impl<M: Matroid> Matroid for DualMatroid<M> {
    fn ground_size(&self) -> usize {
        self.primal.ground_size()
    }

    fn independent(&self, set: &ElementSet) -> bool {
        self.primal.rank_of(&self.complement(set)) == self.primal_rank
    }

    // rank*(A) = |A| + r(X \ A) - r(X)
    fn rank_of(&self, set: &ElementSet) -> usize {
        set.len() + self.primal.rank_of(&self.complement(set)) - self.primal_rank
    }

    fn full_rank(&self) -> usize {
        self.primal.ground_size() - self.primal_rank
    }
}
