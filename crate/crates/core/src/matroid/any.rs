use super::{DualMatroid, ElementSet, Matroid, PartitionMatroid, TransversalMatroid, UniformMatroid};

/// Closed sum of the shipped matroids, as read from instance files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyMatroid {
    Uniform(UniformMatroid),
    Partition(PartitionMatroid),
    Transversal(TransversalMatroid),
    Dual(Box<DualMatroid<AnyMatroid>>),
}

impl AnyMatroid {
    pub fn dual(self) -> Self {
        AnyMatroid::Dual(Box::new(DualMatroid::new(self)))
    }
}

macro_rules! dispatch {
    ($self:ident, $m:ident => $body:expr) => {
        match $self {
            AnyMatroid::Uniform($m) => $body,
            AnyMatroid::Partition($m) => $body,
            AnyMatroid::Transversal($m) => $body,
            AnyMatroid::Dual($m) => $body,
        }
    };
}

impl Matroid for AnyMatroid {
    fn ground_size(&self) -> usize {
        dispatch!(self, m => m.ground_size())
    }

    fn independent(&self, set: &ElementSet) -> bool {
        dispatch!(self, m => m.independent(set))
    }

    fn rank_of(&self, set: &ElementSet) -> usize {
        dispatch!(self, m => m.rank_of(set))
    }

    fn full_rank(&self) -> usize {
        dispatch!(self, m => m.full_rank())
    }
}

impl From<UniformMatroid> for AnyMatroid {
    fn from(m: UniformMatroid) -> Self {
        AnyMatroid::Uniform(m)
    }
}

impl From<PartitionMatroid> for AnyMatroid {
    fn from(m: PartitionMatroid) -> Self {
        AnyMatroid::Partition(m)
    }
}

impl From<TransversalMatroid> for AnyMatroid {
    fn from(m: TransversalMatroid) -> Self {
        AnyMatroid::Transversal(m)
    }
}
