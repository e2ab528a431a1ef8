use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::benchmarks::MovingPeaks;
use crate::error::{FaError, Result};
use crate::variants::PenaltySpec;

pub type EvalFn = Arc<dyn Fn(&[f64]) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KnownOptimum {
    pub position: Vec<f64>,
    pub value: f64,
}

#[derive(Clone)]
enum Landscape {
    Static(EvalFn),
    Moving(Box<MovingPeaks>),
}

/// A boxed, minimised objective.
///
/// Static objectives are pure. A moving-peaks objective carries a clock that
/// advances with every [`Objective::eval`] call, so each run works on its own
/// clone.
#[derive(Clone)]
pub struct Objective {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    landscape: Landscape,
    known_optimum: Option<KnownOptimum>,
    penalties: Vec<PenaltySpec>,
    evaluations: u64,
}

fn check_bounds(lower: &[f64], upper: &[f64]) -> Result<()> {
    if lower.len() != upper.len() {
        return Err(FaError::DimensionMismatch {
            expected: lower.len(),
            actual: upper.len(),
        });
    }
    if lower.is_empty() {
        return Err(FaError::InvalidParam {
            name: "dim",
            reason: "objective needs at least one dimension".into(),
        });
    }
    for (dim, (&lo, &hi)) in lower.iter().zip(upper).enumerate() {
        if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(FaError::InvalidBounds {
                dim,
                lower: lo,
                upper: hi,
            });
        }
    }
    Ok(())
}

impl Objective {
    pub fn new<F>(name: impl Into<String>, lower: Vec<f64>, upper: Vec<f64>, f: F) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        check_bounds(&lower, &upper)?;
        Ok(Self {
            name: name.into(),
            lower,
            upper,
            landscape: Landscape::Static(Arc::new(f)),
            known_optimum: None,
            penalties: Vec::new(),
            evaluations: 0,
        })
    }

    pub(crate) fn moving(name: impl Into<String>, peaks: MovingPeaks) -> Result<Self> {
        let (lower, upper) = (peaks.lower().to_vec(), peaks.upper().to_vec());
        check_bounds(&lower, &upper)?;
        Ok(Self {
            name: name.into(),
            lower,
            upper,
            landscape: Landscape::Moving(Box::new(peaks)),
            known_optimum: None,
            penalties: Vec::new(),
            evaluations: 0,
        })
    }

    /// Attaches a known optimum after checking that the objective actually
    /// attains `value` at `position` (within 1e-9).
    pub fn with_known_optimum(mut self, position: Vec<f64>, value: f64) -> Result<Self> {
        if position.len() != self.dim() {
            return Err(FaError::DimensionMismatch {
                expected: self.dim(),
                actual: position.len(),
            });
        }
        let got = self.peek(&position);
        if !((got - value).abs() <= 1e-9) {
            return Err(FaError::InvalidParam {
                name: "known_optimum",
                reason: format!("objective `{}` evaluates to {got} at {position:?}, expected {value}", self.name),
            });
        }
        self.known_optimum = Some(KnownOptimum { position, value });
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn widths(&self) -> Vec<f64> {
        self.upper.iter().zip(&self.lower).map(|(u, l)| u - l).collect()
    }

    pub fn known_optimum(&self) -> Option<&KnownOptimum> {
        self.known_optimum.as_ref()
    }

    /// Number of counted evaluations performed on this instance.
    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    pub fn moving_peaks(&self) -> Option<&MovingPeaks> {
        match &self.landscape {
            Landscape::Moving(p) => Some(p),
            Landscape::Static(_) => None,
        }
    }

    pub fn is_dynamic(&self) -> bool {
        self.moving_peaks().is_some()
    }

    pub(crate) fn push_penalty(&mut self, spec: PenaltySpec) {
        self.penalties.push(spec);
    }

    /// Counted evaluation. Advances the dynamics clock, if any.
    pub fn eval(&mut self, x: &[f64]) -> f64 {
        if let Landscape::Moving(peaks) = &mut self.landscape {
            peaks.tick();
        }
        self.evaluations += 1;
        self.peek(x)
    }

    /// Value of the current landscape at `x`; neither counted nor clocked.
    pub fn peek(&self, x: &[f64]) -> f64 {
        let raw = match &self.landscape {
            Landscape::Static(f) => f(x),
            Landscape::Moving(peaks) => peaks.value(x),
        };
        raw + self.penalties.iter().map(|p| p.penalty(x)).sum::<f64>()
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(v, (lo, hi))| (*lo..=*hi).contains(v))
    }

    /// Clamps every coordinate to its nearest bound.
    pub fn clamp(&self, x: &mut [f64]) {
        for (v, (lo, hi)) in x.iter_mut().zip(self.lower.iter().zip(&self.upper)) {
            *v = v.clamp(*lo, *hi);
        }
    }
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("dynamic", &self.is_dynamic())
            .field("penalties", &self.penalties.len())
            .field("evaluations", &self.evaluations)
            .finish()
    }
}
