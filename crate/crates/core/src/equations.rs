//! Light intensity, attractiveness and distance laws.
//!
//! Both the intensity and the attractiveness decay as `exp(-gamma * r^2)`.
//! The Gaussian form is finite at `r = 0`, so no special case is needed for
//! coincident fireflies.

use crate::error::{FaError, Result};

fn check_non_negative(name: &'static str, value: f64) -> Result<()> {
    // `!(x >= 0)` also rejects NaN
    if !(value >= 0.0) {
        return Err(FaError::Negative { name, value });
    }
    Ok(())
}

/// Light intensity seen at distance `r` from a source of intensity `i0`.
pub fn intensity_at(i0: f64, gamma: f64, r: f64) -> Result<f64> {
    check_non_negative("gamma", gamma)?;
    check_non_negative("r", r)?;
    Ok(i0 * (-gamma * r * r).exp())
}

/// Attractiveness at distance `r`; equals `beta0` at zero distance.
pub fn attractiveness(beta0: f64, gamma: f64, r: f64) -> Result<f64> {
    check_non_negative("gamma", gamma)?;
    check_non_negative("r", r)?;
    Ok(attraction_from_squared(beta0, gamma, r * r))
}

/// Unchecked attractiveness from a squared distance. Hot-loop form used by
/// the movement operators once parameters have been validated.
#[inline]
pub(crate) fn attraction_from_squared(beta0: f64, gamma: f64, r2: f64) -> f64 {
    beta0 * (-gamma * r2).exp()
}

/// Euclidean distance between two positions.
pub fn distance(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.len() != b.len() {
        return Err(FaError::DimensionMismatch {
            expected: a.len(),
            actual: b.len(),
        });
    }
    Ok(a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt())
}

/// Squared distance after dividing each coordinate difference by the
/// corresponding domain width. `gamma` is always applied to this quantity,
/// which keeps its useful range independent of the problem's units.
pub fn normalized_distance_squared(a: &[f64], b: &[f64], widths: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .zip(widths)
        .map(|((x, y), w)| {
            let d = (x - y) / w;
            d * d
        })
        .sum()
}

/// Brightness of a firefly. Objectives are minimised, so brightness is the
/// negated fitness.
#[inline]
pub fn fitness_to_intensity(fitness: f64) -> f64 {
    -fitness
}
