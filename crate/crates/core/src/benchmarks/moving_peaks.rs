use rand::{Rng, SeedableRng};
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{FaError, Result};
use crate::objective::Objective;
use crate::randomization::SwarmRng;

/// Cone-shaped peaks whose centres drift.
///
/// The landscape value is `-max_k (height_k - width_k * |x - center_k|)`.
/// Every `shift_interval` counted evaluations, each centre moves by exactly
/// `shift_length` in a uniformly random direction, reflecting off the bounds.
/// The evaluation with zero-based index `k * shift_interval` is the first to
/// see the `k`-th landscape.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MovingPeaks {
    heights: Vec<f64>,
    widths: Vec<f64>,
    centers: Vec<Vec<f64>>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    shift_interval: Option<u64>,
    shift_length: f64,
    rng: SwarmRng,
    clock: u64,
    shifts: Vec<u64>,
}

impl MovingPeaks {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        heights: Vec<f64>,
        widths: Vec<f64>,
        centers: Vec<Vec<f64>>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        shift_interval: Option<u64>,
        shift_length: f64,
        seed: u64,
    ) -> Result<Self> {
        let peaks = heights.len();
        if peaks == 0 {
            return Err(FaError::InvalidParam {
                name: "peak_count",
                reason: "need at least one peak".into(),
            });
        }
        if widths.len() != peaks || centers.len() != peaks {
            return Err(FaError::DimensionMismatch {
                expected: peaks,
                actual: if widths.len() != peaks { widths.len() } else { centers.len() },
            });
        }
        if let Some(&w) = widths.iter().find(|w| !(**w > 0.0)) {
            return Err(FaError::InvalidParam {
                name: "widths",
                reason: format!("must be positive, got {w}"),
            });
        }
        if let Some(c) = centers.iter().find(|c| c.len() != lower.len()) {
            return Err(FaError::DimensionMismatch {
                expected: lower.len(),
                actual: c.len(),
            });
        }
        if !(shift_length > 0.0) {
            return Err(FaError::InvalidParam {
                name: "shift_length",
                reason: format!("must be positive, got {shift_length}"),
            });
        }
        if shift_interval == Some(0) {
            return Err(FaError::InvalidParam {
                name: "shift_interval",
                reason: "must be positive".into(),
            });
        }
        let mut rng = SwarmRng::seed_from_u64(seed);
        rng.set_stream(3);
        Ok(Self {
            heights,
            widths,
            centers,
            lower,
            upper,
            shift_interval,
            shift_length,
            rng,
            clock: 0,
            shifts: Vec::new(),
        })
    }

    /// Peaks with heights in [30, 70], widths in [1, 12] and centres drawn
    /// uniformly over `[lo, hi]^dim`, all from `seed`.
    pub fn random(
        dim: usize,
        peak_count: usize,
        lo: f64,
        hi: f64,
        shift_interval: Option<u64>,
        shift_length: f64,
        seed: u64,
    ) -> Result<Self> {
        let mut rng = SwarmRng::seed_from_u64(seed);
        let heights = (0..peak_count).map(|_| 30.0 + 40.0 * rng.random::<f64>()).collect();
        let widths = (0..peak_count).map(|_| 1.0 + 11.0 * rng.random::<f64>()).collect();
        let centers = (0..peak_count)
            .map(|_| (0..dim).map(|_| lo + (hi - lo) * rng.random::<f64>()).collect())
            .collect();
        Self::new(
            heights,
            widths,
            centers,
            vec![lo; dim],
            vec![hi; dim],
            shift_interval,
            shift_length,
            seed,
        )
    }

    pub fn value(&self, x: &[f64]) -> f64 {
        let top = self
            .heights
            .iter()
            .zip(&self.widths)
            .zip(&self.centers)
            .map(|((h, w), c)| {
                let d = x.iter().zip(c).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                h - w * d
            })
            .fold(f64::NEG_INFINITY, f64::max);
        -top
    }

    /// Advances the evaluation clock, shifting first when it is due.
    pub(crate) fn tick(&mut self) {
        if let Some(k) = self.shift_interval {
            if self.clock > 0 && self.clock % k == 0 {
                self.shift();
                self.shifts.push(self.clock);
            }
        }
        self.clock += 1;
    }

    /// Moves every centre by `shift_length` in a random direction.
    pub fn shift(&mut self) {
        let dim = self.lower.len();
        for c in &mut self.centers {
            let mut dir: Vec<f64> = (0..dim).map(|_| self.rng.sample(StandardNormal)).collect();
            let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
            if norm > 0.0 {
                dir.iter_mut().for_each(|d| *d /= norm);
            } else {
                dir[0] = 1.0;
            }
            for (k, v) in c.iter_mut().enumerate() {
                *v = reflect(*v + self.shift_length * dir[k], self.lower[k], self.upper[k]);
            }
        }
    }

    /// Value of the global optimum, `-max height`.
    pub fn optimum_value(&self) -> f64 {
        -self.heights.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn heights(&self) -> &[f64] {
        &self.heights
    }

    pub fn widths(&self) -> &[f64] {
        &self.widths
    }

    pub fn centers(&self) -> &[Vec<f64>] {
        &self.centers
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn shift_interval(&self) -> Option<u64> {
        self.shift_interval
    }

    /// Zero-based evaluation indices at which shifts took effect.
    pub fn shift_log(&self) -> &[u64] {
        &self.shifts
    }
}

fn reflect(mut v: f64, lo: f64, hi: f64) -> f64 {
    while v < lo || v > hi {
        if v < lo {
            v = 2.0 * lo - v;
        }
        if v > hi {
            v = 2.0 * hi - v;
        }
    }
    v
}

pub fn make_moving_peaks(peaks: MovingPeaks) -> Result<Objective> {
    Objective::moving("moving_peaks", peaks)
}
