use super::{ElementSet, Matroid};
use crate::error::{Error, Result};

/// `U(rank, n)`: every set of at most `rank` elements is independent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformMatroid {
    rank: usize,
    ground: usize,
}

impl UniformMatroid {
    pub fn new(rank: usize, ground: usize) -> Result<Self> {
        if rank > ground {
            return Err(Error::InvalidInput(format!(
                "uniform matroid rank {rank} exceeds ground size {ground}"
            )));
        }
        Ok(Self { rank, ground })
    }

    /// The free matroid: every subset is independent.
    pub fn free(ground: usize) -> Self {
        Self {
            rank: ground,
            ground,
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

impl Matroid for UniformMatroid {
    fn ground_size(&self) -> usize {
        self.ground
    }

    fn independent(&self, set: &ElementSet) -> bool {
        set.len() <= self.rank
    }

    fn rank_of(&self, set: &ElementSet) -> usize {
        set.len().min(self.rank)
    }

    fn full_rank(&self) -> usize {
        self.rank
    }
}
