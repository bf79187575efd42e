//! Matroid max-min allocation via layered augmenting trees, and its use as an
//! approximation algorithm for the Santa Claus problem (restricted max-min
//! fair allocation with `p_ij ∈ {0, p_j}`).
//!
//! The crate is organised bottom-up:
//!
//! * [`matroid`]: independence oracles (uniform, partition, transversal, dual),
//!   greedy rank/augmentation, exchange graphs and small-scale base-polytope
//!   utilities.
//! * [`model`]: allocation instances, solver parameters and minimal hyperedges.
//! * [`solver`]: the augmenting-tree algorithm itself.
//! * [`santa`]: the reduction from Santa Claus to matroid max-min allocation.
//! * [`oracle`]: brute-force optima, exact-rational LP feasibility and
//!   solution verification for desk-scale instances.
//! * [`io`]: JSON instance/solution formats and the seeded instance generator.

pub mod error;
pub mod io;
pub mod matching;
pub mod matroid;
pub mod model;
pub mod oracle;
pub mod rational;
pub mod santa;
pub mod solver;

pub use error::{Error, Result};
pub use matroid::{
    AnyMatroid, DualMatroid, ElementId, ElementSet, Matroid, PartitionMatroid,
    TransversalMatroid, UniformMatroid,
};
pub use model::{AllocationInstance, HyperEdge, ResourceId, SolverParams};
pub use rational::Rational;
pub use santa::{GiftPartition, PartitionMode, SantaInstance, SantaSolution, SearchMode};
pub use solver::{Outcome, Solution, SolverOptions, Stuck};
