//! Benchmark objectives: a registry of static test functions and a
//! moving-peaks landscape for dynamic runs.

mod functions;
mod moving_peaks;

pub use functions::{ackley, four_peaks, griewank, rastrigin, rosenbrock, sphere, FOUR_PEAKS_MINIMA};
pub use moving_peaks::{make_moving_peaks, MovingPeaks};

use crate::error::{FaError, Result};
use crate::objective::Objective;

/// Registry identifiers, in listing order.
pub const NAMES: [&str; 6] = ["sphere", "rosenbrock", "rastrigin", "ackley", "griewank", "four_peaks"];

/// Bounds for `name`, or `None` for an unknown name.
pub fn bounds(name: &str) -> Option<(f64, f64)> {
    Some(match name {
        "sphere" | "rastrigin" => (-5.12, 5.12),
        "rosenbrock" => (-5.0, 10.0),
        "ackley" => (-32.768, 32.768),
        "griewank" => (-600.0, 600.0),
        "four_peaks" => (-5.0, 5.0),
        _ => return None,
    })
}

pub fn lookup(name: &str, dim: usize) -> Result<Objective> {
    let (lo, hi) = bounds(name).ok_or_else(|| FaError::UnknownBenchmark(name.to_string()))?;
    if dim == 0 {
        return Err(FaError::InvalidParam {
            name: "dim",
            reason: "must be positive".into(),
        });
    }
    if name == "four_peaks" && dim != 2 {
        return Err(FaError::InvalidParam {
            name: "dim",
            reason: format!("four_peaks is two-dimensional, got {dim}"),
        });
    }
    let (lower, upper) = (vec![lo; dim], vec![hi; dim]);
    let (objective, optimum) = match name {
        "sphere" => (Objective::new(name, lower, upper, sphere)?, vec![0.0; dim]),
        "rosenbrock" => (Objective::new(name, lower, upper, rosenbrock)?, vec![1.0; dim]),
        "rastrigin" => (Objective::new(name, lower, upper, rastrigin)?, vec![0.0; dim]),
        "ackley" => (Objective::new(name, lower, upper, ackley)?, vec![0.0; dim]),
        "griewank" => (Objective::new(name, lower, upper, griewank)?, vec![0.0; dim]),
        "four_peaks" => (Objective::new(name, lower, upper, four_peaks)?, vec![0.0, 0.0]),
        _ => unreachable!("bounds() accepted `{name}`"),
    };
    // four_peaks picks up ~2.25e-7 of extra depth from its neighbours, so the
    // optimum value is taken from the function itself
    let value = match name {
        "four_peaks" => four_peaks(&optimum),
        _ => 0.0,
    };
    objective.with_known_optimum(optimum, value)
}
