//! Random step generators and randomization-parameter schedules.
//!
//! Every generator is a pure function of the rng (or chaotic stream) state it
//! is handed, so replaying a cloned rng reproduces a step bit for bit. Draws
//! are taken in coordinate order; the Lévy generator draws `u` then `v` for
//! each coordinate.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};
use statrs::function::gamma::gamma;

use crate::error::{FaError, Result};

/// Deterministic stream used by every swarm.
pub type SwarmRng = rand_chacha::ChaCha8Rng;

/// Distribution of the per-coordinate random term of the move equation.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EpsilonKind {
    /// Standard normal draws.
    #[default]
    Gaussian,
    /// `U(0,1) - 0.5` draws.
    UniformCentered,
    /// Heavy-tailed Mantegna draws with stability index `lambda`.
    Levy { lambda: f64 },
}

impl EpsilonKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            EpsilonKind::Levy { lambda } => check_levy_lambda(lambda),
            _ => Ok(()),
        }
    }

    /// Draws an `n`-vector from this distribution.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R, n: usize) -> Result<Vec<f64>> {
        match *self {
            EpsilonKind::Gaussian => gaussian_step(rng, n),
            EpsilonKind::UniformCentered => uniform_centered_step(rng, n),
            EpsilonKind::Levy { lambda } => levy_step(rng, n, lambda),
        }
    }
}

fn check_len(n: usize) -> Result<()> {
    if n == 0 {
        return Err(FaError::InvalidParam {
            name: "n",
            reason: "step length must be positive".into(),
        });
    }
    Ok(())
}

pub fn gaussian_step<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Vec<f64>> {
    check_len(n)?;
    Ok((0..n).map(|_| rng.sample::<f64, _>(StandardNormal)).collect())
}

pub fn uniform_centered_step<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<Vec<f64>> {
    check_len(n)?;
    Ok((0..n).map(|_| rng.random::<f64>() - 0.5).collect())
}

/// The Mantegna closed form for the scale of the numerator draw has a
/// positive value only for indices below 2 (`sin(pi * lambda / 2)` changes
/// sign at 2), so the accepted range is the open interval (1, 2).
fn check_levy_lambda(lambda: f64) -> Result<()> {
    if !(lambda > 1.0 && lambda < 2.0) {
        return Err(FaError::OutOfRange {
            name: "lambda",
            value: lambda,
            range: "(1, 2)",
        });
    }
    Ok(())
}

/// Mantegna scale `sigma_u` for stability index `lambda`.
pub fn mantegna_sigma(lambda: f64) -> Result<f64> {
    check_levy_lambda(lambda)?;
    let num = gamma(1.0 + lambda) * (PI * lambda / 2.0).sin();
    let den = gamma((1.0 + lambda) / 2.0) * lambda * 2f64.powf((lambda - 1.0) / 2.0);
    Ok((num / den).powf(1.0 / lambda))
}

/// Heavy-tailed steps `u / |v|^(1/lambda)` with `u ~ N(0, sigma_u^2)` and
/// `v ~ N(0, 1)`.
pub fn levy_step<R: Rng + ?Sized>(rng: &mut R, n: usize, lambda: f64) -> Result<Vec<f64>> {
    check_len(n)?;
    let sigma = mantegna_sigma(lambda)?;
    Ok((0..n)
        .map(|_| {
            let u = sigma * rng.sample::<f64, _>(StandardNormal);
            let v: f64 = rng.sample(StandardNormal);
            // keeps the step finite when v underflows to zero
            u / v.abs().max(f64::MIN_POSITIVE).powf(1.0 / lambda)
        })
        .collect())
}

/// One iterate of the logistic map `4x(1-x)`.
pub fn logistic_next(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(FaError::OutOfRange {
            name: "x",
            value: x,
            range: "[0, 1]",
        });
    }
    Ok((4.0 * x * (1.0 - x)).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChaoticMap {
    Logistic,
}

impl ChaoticMap {
    pub fn next(self, x: f64) -> Result<f64> {
        match self {
            ChaoticMap::Logistic => logistic_next(x),
        }
    }

    /// Starting points that collapse onto a fixed point within two iterates.
    fn degenerate_seeds(self) -> &'static [f64] {
        match self {
            ChaoticMap::Logistic => &[0.0, 0.25, 0.5, 0.75, 1.0],
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChaoticStream {
    pub map: ChaoticMap,
    pub x: f64,
}

impl ChaoticStream {
    pub fn new(map: ChaoticMap, x0: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x0) {
            return Err(FaError::OutOfRange {
                name: "x0",
                value: x0,
                range: "[0, 1]",
            });
        }
        Ok(Self { map, x: x0 })
    }
}

/// Advances `stream` by one iterate and maps the new value into `[lo, hi]`.
pub fn chaotic_param_stream(stream: ChaoticStream, lo: f64, hi: f64) -> Result<(f64, ChaoticStream)> {
    if !(lo < hi) {
        return Err(FaError::InvalidParam {
            name: "range",
            reason: format!("lower end {lo} must be below upper end {hi}"),
        });
    }
    let x = stream.map.next(stream.x)?;
    let value = (lo + x * (hi - lo)).clamp(lo, hi);
    Ok((value, ChaoticStream { x, ..stream }))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ScheduleKind {
    Constant,
    Geometric { ratio: f64 },
    Chaotic { map: ChaoticMap, x0: f64 },
}

impl Default for ScheduleKind {
    fn default() -> Self {
        ScheduleKind::Geometric { ratio: 0.97 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScheduleDescriptor {
    pub kind: ScheduleKind,
    pub alpha0: f64,
}

impl ScheduleDescriptor {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha0 >= 0.0) {
            return Err(FaError::Negative {
                name: "alpha",
                value: self.alpha0,
            });
        }
        match self.kind {
            ScheduleKind::Constant => Ok(()),
            ScheduleKind::Geometric { ratio } => {
                if ratio > 0.0 && ratio < 1.0 {
                    Ok(())
                } else {
                    Err(FaError::OutOfRange {
                        name: "ratio",
                        value: ratio,
                        range: "(0, 1)",
                    })
                }
            }
            ScheduleKind::Chaotic { map, x0 } => {
                if !(x0 > 0.0 && x0 < 1.0) || map.degenerate_seeds().contains(&x0) {
                    return Err(FaError::InvalidParam {
                        name: "x0",
                        reason: format!("{x0} is outside (0, 1) or collapses to a fixed point"),
                    });
                }
                Ok(())
            }
        }
    }
}

/// Randomization parameter at generation `t`.
pub fn alpha_at(schedule: &ScheduleDescriptor, t: u64) -> f64 {
    match schedule.kind {
        ScheduleKind::Constant => schedule.alpha0,
        ScheduleKind::Geometric { ratio } => {
            // powi takes i32; beyond that the product has long underflowed
            let t = t.min(i32::MAX as u64) as i32;
            schedule.alpha0 * ratio.powi(t)
        }
        ScheduleKind::Chaotic { map, x0 } => {
            let mut x = x0.clamp(0.0, 1.0);
            for _ in 0..t {
                x = map.next(x).unwrap_or(0.0);
            }
            schedule.alpha0 * x
        }
    }
}
