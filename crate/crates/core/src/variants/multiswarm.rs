//! Interacting sub-swarms for dynamic landscapes.
//!
//! Each generation: re-evaluate the sentinels and, if any moved by more than
//! [`CHANGE_TOLERANCE`], invalidate every cached fitness and rewind the
//! randomization schedules; step every swarm; re-randomize the worse of any
//! two swarms whose bests are closer than the exclusion radius; and, when all
//! swarms have collapsed below the anti-convergence radius, re-randomize the
//! globally worst one. Distances are measured in normalised coordinates.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::equations::normalized_distance_squared;
use crate::error::{FaError, Result};
use crate::objective::Objective;
use crate::params::FaParams;
use crate::randomization::SwarmRng;
use crate::swarm::{self, Firefly, RunReport, SwarmState, TracePoint};

/// Sentinel fitness drift that counts as an environment change.
pub const CHANGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiSwarmConfig {
    pub num_swarms: usize,
    pub swarm_size: usize,
    pub exclusion_radius: f64,
    pub anticonvergence_radius: f64,
    pub sentinel_count: usize,
    /// Generations subtracted from each swarm's counter after a detected
    /// change, which raises the scheduled randomization step again.
    pub alpha_rewind: u64,
}

impl Default for MultiSwarmConfig {
    fn default() -> Self {
        Self {
            num_swarms: 5,
            swarm_size: 5,
            exclusion_radius: 0.1,
            anticonvergence_radius: 0.01,
            sentinel_count: 1,
            alpha_rewind: 50,
        }
    }
}

impl MultiSwarmConfig {
    /// Splits `pop_size` fireflies into `num_swarms` equal swarms.
    pub fn for_population(pop_size: usize, num_swarms: usize) -> Result<Self> {
        if num_swarms == 0 || pop_size % num_swarms != 0 {
            return Err(FaError::InvalidParam {
                name: "num_swarms",
                reason: format!("population of {pop_size} cannot be split into {num_swarms} equal swarms"),
            });
        }
        Ok(Self {
            num_swarms,
            swarm_size: pop_size / num_swarms,
            ..Self::default()
        })
    }

    pub fn population(&self) -> usize {
        self.num_swarms * self.swarm_size
    }

    pub fn validate(&self, dim: usize) -> Result<()> {
        if self.num_swarms == 0 {
            return Err(FaError::InvalidParam {
                name: "num_swarms",
                reason: "need at least one swarm".into(),
            });
        }
        if self.swarm_size < 2 {
            return Err(FaError::InvalidParam {
                name: "swarm_size",
                reason: format!("need at least 2 fireflies per swarm, got {}", self.swarm_size),
            });
        }
        let half_diagonal = (dim as f64).sqrt() / 2.0;
        if !(self.exclusion_radius > 0.0 && self.exclusion_radius < half_diagonal) {
            return Err(FaError::OutOfRange {
                name: "exclusion_radius",
                value: self.exclusion_radius,
                range: "(0, half the normalised diagonal)",
            });
        }
        if !(self.anticonvergence_radius > 0.0) {
            return Err(FaError::OutOfRange {
                name: "anticonvergence_radius",
                value: self.anticonvergence_radius,
                range: "(0, inf)",
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentinel {
    pub position: Vec<f64>,
    pub fitness: f64,
}

/// What happened during one [`MultiSwarm::step`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MultiSwarmStep {
    pub change_detected: bool,
    /// Swarms re-randomized by exclusion or anti-convergence, in order.
    pub rerandomized: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MultiSwarm {
    pub swarms: Vec<SwarmState>,
    pub sentinels: Vec<Sentinel>,
    pub config: MultiSwarmConfig,
    pub fes_used: u64,
    pub max_fes: u64,
    pub generation: u64,
    /// Best firefly since the last detected change.
    pub best: Option<Firefly>,
    /// Value of `fes_used` at each detected change.
    pub changes: Vec<u64>,
    rng: SwarmRng,
}

fn sub_params(params: &FaParams, config: &MultiSwarmConfig) -> FaParams {
    FaParams {
        pop_size: config.swarm_size,
        max_fes: params.max_fes.max(config.swarm_size as u64),
        ..params.clone()
    }
}

impl MultiSwarm {
    /// Builds one swarm per seed and evaluates the sentinels. Seeds must be
    /// pairwise distinct; `sentinel_seed` drives sentinel placement.
    pub fn new(
        objective: &mut Objective,
        params: &FaParams,
        config: MultiSwarmConfig,
        seeds: &[u64],
        sentinel_seed: u64,
    ) -> Result<Self> {
        config.validate(objective.dim())?;
        if seeds.len() != config.num_swarms {
            return Err(FaError::InvalidParam {
                name: "seeds",
                reason: format!("{} seeds for {} swarms", seeds.len(), config.num_swarms),
            });
        }
        for (i, a) in seeds.iter().enumerate() {
            if let Some(j) = seeds[i + 1..].iter().position(|b| b == a) {
                return Err(FaError::OverlappingStreams {
                    first: i,
                    second: i + 1 + j,
                    seed: *a,
                });
            }
        }
        let sub = sub_params(params, &config);
        sub.validate()?;
        let swarms = seeds
            .iter()
            .map(|&s| swarm::initialize(objective, &sub, s))
            .collect::<Result<Vec<_>>>()?;

        let mut rng = SwarmRng::seed_from_u64(sentinel_seed);
        rng.set_stream(2);
        let mut ms = Self {
            swarms,
            sentinels: Vec::with_capacity(config.sentinel_count),
            config,
            fes_used: 0,
            max_fes: params.max_fes,
            generation: 0,
            best: None,
            changes: Vec::new(),
            rng,
        };
        for _ in 0..ms.config.sentinel_count {
            if ms.is_complete() {
                break;
            }
            let position: Vec<f64> = objective
                .lower()
                .iter()
                .zip(objective.upper())
                .map(|(lo, hi)| lo + ms.rng.random::<f64>() * (hi - lo))
                .collect();
            let fitness = ms.counted_eval(objective, &position)?;
            ms.sentinels.push(Sentinel { position, fitness });
        }
        Ok(ms)
    }

    pub fn is_complete(&self) -> bool {
        self.fes_used >= self.max_fes
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best.as_ref().and_then(|b| b.fitness)
    }

    fn counted_eval(&mut self, objective: &mut Objective, x: &[f64]) -> Result<f64> {
        let v = objective.eval(x);
        self.fes_used += 1;
        if v.is_nan() {
            return Err(FaError::NanFitness { position: x.to_vec() });
        }
        Ok(v)
    }

    fn offer_best(&mut self, candidate: Option<&Firefly>) {
        let Some(c) = candidate else { return };
        let Some(f) = c.fitness else { return };
        if self.best_fitness().map_or(true, |b| f < b) {
            self.best = Some(c.clone());
        }
    }

    /// Re-evaluates the sentinels; returns whether any of them drifted.
    pub fn check_sentinels(&mut self, objective: &mut Objective) -> Result<bool> {
        let mut changed = false;
        for k in 0..self.sentinels.len() {
            if self.is_complete() {
                break;
            }
            let position = self.sentinels[k].position.clone();
            let v = self.counted_eval(objective, &position)?;
            if (v - self.sentinels[k].fitness).abs() > CHANGE_TOLERANCE {
                changed = true;
            }
            self.sentinels[k].fitness = v;
        }
        Ok(changed)
    }

    /// Drops every cached fitness and best, and rewinds the schedules.
    fn respond_to_change(&mut self) {
        self.changes.push(self.fes_used);
        self.best = None;
        for s in &mut self.swarms {
            for f in &mut s.fireflies {
                f.fitness = None;
            }
            s.best = None;
            s.t = s.t.saturating_sub(self.config.alpha_rewind);
        }
    }

    fn rerandomize(&mut self, idx: usize, objective: &Objective) {
        let s = &mut self.swarms[idx];
        s.scatter(objective);
        s.t = 0;
    }

    /// Re-randomizes the worse swarm of every pair whose bests lie within the
    /// exclusion radius. Ties go against the higher index.
    pub fn apply_exclusion(&mut self, objective: &Objective) -> Vec<usize> {
        let widths = objective.widths();
        let r2 = self.config.exclusion_radius * self.config.exclusion_radius;
        let mut hit = Vec::new();
        for a in 0..self.swarms.len() {
            for b in a + 1..self.swarms.len() {
                if hit.contains(&a) || hit.contains(&b) {
                    continue;
                }
                let (Some(ba), Some(bb)) = (&self.swarms[a].best, &self.swarms[b].best) else {
                    continue;
                };
                if normalized_distance_squared(&ba.position, &bb.position, &widths) >= r2 {
                    continue;
                }
                let fa = ba.fitness.unwrap_or(f64::INFINITY);
                let fb = bb.fitness.unwrap_or(f64::INFINITY);
                let worse = if fb >= fa { b } else { a };
                self.rerandomize(worse, objective);
                hit.push(worse);
            }
        }
        hit
    }

    fn diameter(swarm: &SwarmState, widths: &[f64]) -> f64 {
        let ff = &swarm.fireflies;
        let mut widest = 0.0f64;
        for i in 0..ff.len() {
            for j in i + 1..ff.len() {
                widest = widest.max(normalized_distance_squared(&ff[i].position, &ff[j].position, widths));
            }
        }
        widest.sqrt()
    }

    /// When every swarm is narrower than the anti-convergence radius,
    /// re-randomizes the swarm with the worst best fitness.
    pub fn apply_anticonvergence(&mut self, objective: &Objective) -> Option<usize> {
        let widths = objective.widths();
        let all_converged = self
            .swarms
            .iter()
            .all(|s| Self::diameter(s, &widths) < self.config.anticonvergence_radius);
        if !all_converged {
            return None;
        }
        let worst = self
            .swarms
            .iter()
            .enumerate()
            .map(|(i, s)| (i, s.best_fitness().unwrap_or(f64::INFINITY)))
            .fold(None::<(usize, f64)>, |acc, (i, f)| match acc {
                Some((_, wf)) if wf >= f => acc,
                _ => Some((i, f)),
            })?
            .0;
        self.rerandomize(worst, objective);
        Some(worst)
    }

    pub fn step(&mut self, objective: &mut Objective, params: &FaParams) -> Result<MultiSwarmStep> {
        if self.is_complete() {
            return Err(FaError::BudgetExhausted);
        }
        let mut outcome = MultiSwarmStep {
            change_detected: self.check_sentinels(objective)?,
            rerandomized: Vec::new(),
        };
        if outcome.change_detected {
            self.respond_to_change();
        }

        let sub = sub_params(params, &self.config);
        for i in 0..self.swarms.len() {
            if self.is_complete() {
                break;
            }
            let remaining = self.max_fes - self.fes_used;
            let s = &mut self.swarms[i];
            s.max_fes = s.fes_used + remaining;
            let before = s.fes_used;
            swarm::step(s, objective, &sub)?;
            let spent = s.fes_used - before;
            self.fes_used += spent;
            let best = self.swarms[i].best.clone();
            self.offer_best(best.as_ref());
        }

        outcome.rerandomized = self.apply_exclusion(objective);
        if let Some(w) = self.apply_anticonvergence(objective) {
            outcome.rerandomized.push(w);
        }
        self.generation += 1;
        Ok(outcome)
    }
}

/// Convenience driver: swarm `i` is seeded from `seed` and `i`, sentinels from
/// `seed`. Returns a report whose trace restarts its best-so-far record after
/// every detected change.
pub fn run_multiswarm(
    objective: &Objective,
    params: &FaParams,
    config: &MultiSwarmConfig,
    seed: u64,
) -> Result<RunReport> {
    let started = Instant::now();
    let mut objective = objective.clone();
    let seeds: Vec<u64> = (0..config.num_swarms as u64)
        .map(|i| seed.wrapping_add(i.wrapping_mul(0x9E37_79B9_7F4A_7C15)))
        .collect();
    let mut ms = MultiSwarm::new(&mut objective, params, config.clone(), &seeds, seed)?;
    let mut trace = Vec::new();
    let mut last_best = None;
    while !ms.is_complete() {
        ms.step(&mut objective, params)?;
        if ms.best.is_some() {
            last_best = ms.best.clone();
        }
        trace.push(TracePoint {
            generation: ms.generation - 1,
            fes_used: ms.fes_used,
            best_fitness: ms.best_fitness().unwrap_or(f64::INFINITY),
        });
    }
    Ok(RunReport {
        trace,
        final_best: last_best.ok_or(FaError::Unevaluated)?,
        fes_total: ms.fes_used,
        seed,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks::{self, MovingPeaks};

    fn params(max_fes: u64) -> FaParams {
        FaParams { max_fes, ..FaParams::default() }
    }

    #[test]
    fn duplicate_seeds_are_rejected() {
        let mut obj = benchmarks::lookup("sphere", 2).unwrap();
        let cfg = MultiSwarmConfig { num_swarms: 3, ..MultiSwarmConfig::default() };
        let err = MultiSwarm::new(&mut obj, &params(1_000), cfg, &[4, 9, 4], 0).unwrap_err();
        assert_eq!(err, FaError::OverlappingStreams { first: 0, second: 2, seed: 4 });
    }

    #[test]
    fn coinciding_bests_rerandomize_exactly_one() {
        let mut obj = benchmarks::lookup("sphere", 2).unwrap();
        let cfg = MultiSwarmConfig { num_swarms: 2, swarm_size: 4, ..MultiSwarmConfig::default() };
        let mut ms = MultiSwarm::new(&mut obj, &params(1_000), cfg, &[1, 2], 0).unwrap();
        let shared = Firefly { position: vec![0.5, 0.5], fitness: Some(0.5) };
        ms.swarms[0].best = Some(shared.clone());
        ms.swarms[1].best = Some(shared);
        assert_eq!(ms.apply_exclusion(&obj), vec![1]);
        assert!(ms.swarms[1].best.is_none());
        assert!(ms.swarms[0].best.is_some());
    }

    #[test]
    fn exclusion_holds_after_every_step() {
        let mut obj = benchmarks::lookup("rastrigin", 2).unwrap();
        let cfg = MultiSwarmConfig::default();
        let p = params(5_000);
        let mut ms = MultiSwarm::new(&mut obj, &p, cfg.clone(), &[1, 2, 3, 4, 5], 9).unwrap();
        let widths = obj.widths();
        while !ms.is_complete() {
            let out = ms.step(&mut obj, &p).unwrap();
            for a in 0..ms.swarms.len() {
                for b in a + 1..ms.swarms.len() {
                    let (Some(x), Some(y)) = (&ms.swarms[a].best, &ms.swarms[b].best) else { continue };
                    let d = normalized_distance_squared(&x.position, &y.position, &widths).sqrt();
                    assert!(
                        d >= cfg.exclusion_radius || out.rerandomized.contains(&a) || out.rerandomized.contains(&b)
                    );
                }
            }
        }
        assert_eq!(ms.fes_used, 5_000);
    }

    #[test]
    fn static_objective_never_flags_a_change() {
        let obj = benchmarks::lookup("ackley", 3).unwrap();
        let cfg = MultiSwarmConfig { sentinel_count: 3, ..MultiSwarmConfig::default() };
        let report = run_multiswarm(&obj, &params(20_000), &cfg, 5).unwrap();
        assert!(report.trace.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness));
        let mut o = obj.clone();
        let mut ms = MultiSwarm::new(&mut o, &params(20_000), cfg, &[1, 2, 3, 4, 5], 0).unwrap();
        while !ms.is_complete() {
            assert!(!ms.step(&mut o, &params(20_000)).unwrap().change_detected);
        }
        assert!(ms.changes.is_empty());
    }

    #[test]
    fn shift_is_flagged_on_next_sentinel_check() {
        let peaks = MovingPeaks::random(2, 5, 0.0, 100.0, Some(1_000), 1.0, 3).unwrap();
        let mut obj = benchmarks::make_moving_peaks(peaks).unwrap();
        let p = params(4_000);
        let mut ms = MultiSwarm::new(&mut obj, &p, MultiSwarmConfig::default(), &[1, 2, 3, 4, 5], 0).unwrap();
        let cycle = (ms.config.population() + ms.config.sentinel_count) as u64;
        while !ms.is_complete() {
            ms.step(&mut obj, &p).unwrap();
        }
        let shifts = obj.moving_peaks().unwrap().shift_log().to_vec();
        assert_eq!(shifts, vec![1_000, 2_000, 3_000]);
        assert_eq!(ms.changes.len(), shifts.len());
        for (shift, seen) in shifts.iter().zip(&ms.changes) {
            assert!(seen > shift && seen - shift <= cycle, "shift {shift} seen at {seen}");
        }
    }
}
