use std::fmt;
use std::sync::Arc;

use crate::error::{FaError, Result};
use crate::objective::Objective;

/// Inequality constraint `g(x) <= 0`.
pub type ConstraintFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

/// Exterior penalty `weight * sum_k max(0, g_k(x))^exponent`.
#[derive(Clone)]
pub struct PenaltySpec {
    constraints: Vec<ConstraintFn>,
    pub weight: f64,
    pub exponent: f64,
}

impl PenaltySpec {
    pub fn new(weight: f64, exponent: f64) -> Result<Self> {
        if !(weight > 0.0) || !weight.is_finite() {
            return Err(FaError::InvalidParam {
                name: "weight",
                reason: format!("must be positive and finite, got {weight}"),
            });
        }
        if !(exponent >= 1.0) || !exponent.is_finite() {
            return Err(FaError::InvalidParam {
                name: "exponent",
                reason: format!("must be at least 1, got {exponent}"),
            });
        }
        Ok(Self {
            constraints: Vec::new(),
            weight,
            exponent,
        })
    }

    pub fn with_constraint<G>(mut self, g: G) -> Self
    where
        G: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        self.constraints.push(Arc::new(g));
        self
    }

    pub fn constraints(&self) -> usize {
        self.constraints.len()
    }

    pub fn is_feasible(&self, x: &[f64]) -> bool {
        self.constraints.iter().all(|g| g(x) <= 0.0)
    }

    pub fn penalty(&self, x: &[f64]) -> f64 {
        let total: f64 = self
            .constraints
            .iter()
            .map(|g| g(x))
            .filter(|v| *v > 0.0)
            .map(|v| v.powf(self.exponent))
            .sum();
        self.weight * total
    }
}

impl Default for PenaltySpec {
    fn default() -> Self {
        Self {
            constraints: Vec::new(),
            weight: 1e3,
            exponent: 2.0,
        }
    }
}

impl fmt::Debug for PenaltySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PenaltySpec")
            .field("constraints", &self.constraints.len())
            .field("weight", &self.weight)
            .field("exponent", &self.exponent)
            .finish()
    }
}

/// Returns a copy of `objective` whose value carries the penalty of `spec`.
/// Bounds, dimension and dynamics are unchanged.
pub fn penalty_wrap(objective: &Objective, spec: PenaltySpec) -> Objective {
    let mut wrapped = objective.clone();
    wrapped.push_penalty(spec);
    wrapped
}
