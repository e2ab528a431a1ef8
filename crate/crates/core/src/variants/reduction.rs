use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::params::{FaParams, MovementRule};
use crate::randomization::SwarmRng;

/// Parameter settings under which the move equation collapses onto a simpler
/// algorithm.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionMode {
    /// `beta0 = 0`: independent random walks, i.e. parallel simulated
    /// annealing with `alpha` as the cooling schedule.
    SaLike,
    /// `gamma = 0`, `beta0 ~ U(0,1)` drawn once per run: crossover toward a
    /// brighter peer without mutation.
    DeLike,
    /// `gamma = 0` with every firefly pulled toward the global best.
    PsoLike,
}

/// Rng stream reserved for per-run preset draws; swarm streams use stream 0.
const PRESET_STREAM: u64 = 1;

/// Applies `mode` on top of `base`. `seed` only matters for `DeLike`.
pub fn reduction_mode(mode: ReductionMode, base: &FaParams, seed: u64) -> FaParams {
    match mode {
        ReductionMode::SaLike => FaParams { beta0: 0.0, ..base.clone() },
        ReductionMode::DeLike => {
            let mut rng = SwarmRng::seed_from_u64(seed);
            rng.set_stream(PRESET_STREAM);
            FaParams {
                gamma: 0.0,
                beta0: rng.random::<f64>(),
                ..base.clone()
            }
        }
        ReductionMode::PsoLike => FaParams {
            gamma: 0.0,
            movement: MovementRule::GlobalBestPull,
            ..base.clone()
        },
    }
}
