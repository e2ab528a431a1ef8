//! Control parameters of a run.

use serde::{Deserialize, Serialize};

use crate::error::{FaError, Result};
use crate::randomization::{alpha_at, ScheduleDescriptor, ScheduleKind};

pub use crate::randomization::EpsilonKind;

/// Source of attractor positions during the movement sweep.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpdateScheme {
    /// Moves are applied in place and later comparisons see them.
    #[default]
    Asynchronous,
    /// Attractors are read from a start-of-generation snapshot.
    Synchronous,
}

/// Movement rule applied after each evaluation pass.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MovementRule {
    /// Every firefly moves toward each brighter peer in turn.
    #[default]
    Pairwise,
    /// Every firefly is pulled once toward the best-so-far position.
    GlobalBestPull,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FaParams {
    /// Initial randomization step, as a fraction of each dimension's width.
    pub alpha: f64,
    pub beta0: f64,
    /// Absorption coefficient, applied to distances measured in coordinates
    /// normalised to `[0, 1]` per dimension.
    pub gamma: f64,
    pub pop_size: usize,
    /// Budget in objective evaluations.
    pub max_fes: u64,
    pub epsilon: EpsilonKind,
    pub update_scheme: UpdateScheme,
    pub schedule: ScheduleKind,
    pub elitism: bool,
    /// Improvement probes per generation for the brightest firefly. Only
    /// used when `elitism` is set; zero keeps the brightest in place.
    pub elitist_trials: usize,
    pub movement: MovementRule,
}

impl Default for FaParams {
    fn default() -> Self {
        Self {
            alpha: 0.2,
            beta0: 1.0,
            gamma: 1.0,
            pop_size: 25,
            max_fes: 50_000,
            epsilon: EpsilonKind::Gaussian,
            update_scheme: UpdateScheme::Asynchronous,
            schedule: ScheduleKind::default(),
            elitism: false,
            elitist_trials: 0,
            movement: MovementRule::Pairwise,
        }
    }
}

/// Coefficients of the move equation frozen for one generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MoveCoefficients {
    pub alpha: f64,
    pub beta0: f64,
    pub gamma: f64,
    pub epsilon: EpsilonKind,
}

impl FaParams {
    pub fn alpha_schedule(&self) -> ScheduleDescriptor {
        ScheduleDescriptor {
            kind: self.schedule,
            alpha0: self.alpha,
        }
    }

    pub fn coefficients(&self, t: u64) -> MoveCoefficients {
        MoveCoefficients {
            alpha: alpha_at(&self.alpha_schedule(), t),
            beta0: self.beta0,
            gamma: self.gamma,
            epsilon: self.epsilon,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (name, value) in [("beta0", self.beta0), ("gamma", self.gamma)] {
            if !(value >= 0.0) || value.is_infinite() {
                return Err(FaError::Negative { name, value });
            }
        }
        self.alpha_schedule().validate()?;
        self.epsilon.validate()?;
        if self.pop_size < 2 {
            return Err(FaError::InvalidParam {
                name: "pop_size",
                reason: format!("need at least 2 fireflies, got {}", self.pop_size),
            });
        }
        if self.max_fes < self.pop_size as u64 {
            return Err(FaError::InvalidParam {
                name: "max_fes",
                reason: format!(
                    "budget {} is smaller than one evaluation pass of {}",
                    self.max_fes, self.pop_size
                ),
            });
        }
        Ok(())
    }
}
