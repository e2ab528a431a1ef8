//! Variant strategies layered over the base loop.

mod elitist;
mod multiswarm;
mod penalty;
mod pull;
mod reduction;

pub use elitist::elitist_best_move;
pub use multiswarm::{run_multiswarm, MultiSwarm, MultiSwarmConfig, MultiSwarmStep, Sentinel};
pub use penalty::{penalty_wrap, ConstraintFn, PenaltySpec};
pub use pull::global_best_pull_step;
pub use reduction::{reduction_mode, ReductionMode};
