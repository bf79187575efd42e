//! Ground truth for desk-scale instances: exhaustive optima, exact LP
//! feasibility and solution checks. Everything here is exponential or
//! dense and guarded by explicit size limits.

mod brute;
mod lp;
mod simplex;
mod verify;

pub use brute::{brute_force_matroid_maxmin, brute_force_santa_opt, MaxMinOptimum, SantaOptimum};
pub use lp::{
    compact_lp, lp_feasible_compact, lp_feasible_partition, lp_feasible_q, q_lp, q_lp_feasible_point,
};
pub use simplex::{LinearProgram, Sense};
pub use verify::{verify_solution, VerificationReport};
