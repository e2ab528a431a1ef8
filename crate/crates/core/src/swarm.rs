//! Base firefly loop: initialise, then per generation update the
//! randomization step, evaluate, sort, record the best and move.
//!
//! Draw order on the swarm rng is fixed: initialisation draws coordinates
//! firefly by firefly; the movement sweep visits fireflies in sorted order and
//! draws one epsilon vector per move (or per random walk). Replaying a cloned
//! rng therefore reproduces a generation exactly.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::equations::{attraction_from_squared, fitness_to_intensity, normalized_distance_squared};
use crate::error::{FaError, Result};
use crate::objective::Objective;
use crate::params::{FaParams, MoveCoefficients, MovementRule, UpdateScheme};
use crate::randomization::SwarmRng;
use crate::variants;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Firefly {
    pub position: Vec<f64>,
    /// Objective value at `position`; `None` until evaluated and again after
    /// every move.
    pub fitness: Option<f64>,
}

impl Firefly {
    pub fn new(position: Vec<f64>) -> Self {
        Self {
            position,
            fitness: None,
        }
    }

    pub fn is_evaluated(&self) -> bool {
        self.fitness.is_some()
    }

    /// Brightness; unevaluated fireflies are the dimmest possible.
    pub fn intensity(&self) -> f64 {
        self.fitness.map_or(f64::NEG_INFINITY, fitness_to_intensity)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SwarmState {
    pub fireflies: Vec<Firefly>,
    /// Generation counter.
    pub t: u64,
    pub fes_used: u64,
    pub max_fes: u64,
    /// Best evaluated firefly seen so far.
    pub best: Option<Firefly>,
    pub rng: SwarmRng,
    pub seed: u64,
}

impl SwarmState {
    /// A swarm at explicit positions, mostly useful for tests and oracles.
    pub fn from_positions(positions: Vec<Vec<f64>>, max_fes: u64, seed: u64) -> Self {
        Self {
            fireflies: positions.into_iter().map(Firefly::new).collect(),
            t: 0,
            fes_used: 0,
            max_fes,
            best: None,
            rng: SwarmRng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn is_complete(&self) -> bool {
        self.fes_used >= self.max_fes
    }

    pub fn remaining_fes(&self) -> u64 {
        self.max_fes.saturating_sub(self.fes_used)
    }

    pub fn best_fitness(&self) -> Option<f64> {
        self.best.as_ref().and_then(|b| b.fitness)
    }

    pub(crate) fn offer_best(&mut self, candidate: &Firefly) {
        let Some(f) = candidate.fitness else { return };
        if self.best_fitness().map_or(true, |b| f < b) {
            self.best = Some(candidate.clone());
        }
    }

    /// Scatters every firefly uniformly over the domain and forgets the best.
    pub fn scatter(&mut self, objective: &Objective) {
        let (lower, upper) = (objective.lower(), objective.upper());
        for f in &mut self.fireflies {
            f.position = uniform_position(&mut self.rng, lower, upper);
            f.fitness = None;
        }
        self.best = None;
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TracePoint {
    pub generation: u64,
    pub fes_used: u64,
    pub best_fitness: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub trace: Vec<TracePoint>,
    pub final_best: Firefly,
    pub fes_total: u64,
    pub seed: u64,
    #[serde(skip)]
    pub wall_time: Duration,
}

fn uniform_position<R: Rng + ?Sized>(rng: &mut R, lower: &[f64], upper: &[f64]) -> Vec<f64> {
    lower
        .iter()
        .zip(upper)
        .map(|(lo, hi)| (lo + rng.random::<f64>() * (hi - lo)).min(*hi))
        .collect()
}

pub fn initialize(objective: &Objective, params: &FaParams, seed: u64) -> Result<SwarmState> {
    params.validate()?;
    let mut rng = SwarmRng::seed_from_u64(seed);
    let fireflies = (0..params.pop_size)
        .map(|_| Firefly::new(uniform_position(&mut rng, objective.lower(), objective.upper())))
        .collect();
    Ok(SwarmState {
        fireflies,
        t: 0,
        fes_used: 0,
        max_fes: params.max_fes,
        best: None,
        rng,
        seed,
    })
}

/// Evaluates the population in index order, stopping early when the budget
/// runs out. Returns the number of evaluations performed.
pub fn evaluate(state: &mut SwarmState, objective: &mut Objective) -> Result<usize> {
    let count = (state.remaining_fes().min(state.fireflies.len() as u64)) as usize;
    for i in 0..count {
        let value = objective.eval(&state.fireflies[i].position);
        if value.is_nan() {
            return Err(FaError::NanFitness {
                position: state.fireflies[i].position.clone(),
            });
        }
        state.fireflies[i].fitness = Some(value);
        state.fes_used += 1;
        let candidate = state.fireflies[i].clone();
        state.offer_best(&candidate);
    }
    Ok(count)
}

/// Stable ascending sort by fitness, best first.
pub fn order(state: &mut SwarmState) -> Result<()> {
    if state.fireflies.iter().any(|f| !f.is_evaluated()) {
        return Err(FaError::Unevaluated);
    }
    state.fireflies.sort_by(|a, b| {
        a.fitness
            .partial_cmp(&b.fitness)
            .unwrap_or(Ordering::Equal)
    });
    Ok(())
}

/// Best firefly of the current generation (lowest index on ties). Also folds
/// it into the best-so-far record.
pub fn find_best(state: &mut SwarmState) -> Result<Firefly> {
    if state.fireflies.is_empty() {
        return Err(FaError::EmptyPopulation);
    }
    let best = state
        .fireflies
        .iter()
        .filter_map(|f| f.fitness.map(|v| (v, f)))
        .fold(None::<(f64, &Firefly)>, |acc, (v, f)| match acc {
            Some((bv, _)) if bv <= v => acc,
            _ => Some((v, f)),
        })
        .map(|(_, f)| f.clone())
        .ok_or(FaError::Unevaluated)?;
    state.offer_best(&best);
    Ok(best)
}

/// One application of the move equation, before bounds handling:
/// `si + beta * (sj - si) + alpha * eps * width`, where `beta` decays with the
/// normalised squared distance. Always draws one epsilon vector, even when
/// `alpha` is zero, so the stream position does not depend on parameters.
pub fn move_firefly<R: Rng + ?Sized>(
    si: &[f64],
    sj: &[f64],
    coeffs: &MoveCoefficients,
    widths: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    if si.len() != sj.len() || si.len() != widths.len() {
        return Err(FaError::DimensionMismatch {
            expected: si.len(),
            actual: if si.len() != sj.len() { sj.len() } else { widths.len() },
        });
    }
    let r2 = normalized_distance_squared(si, sj, widths);
    let beta = attraction_from_squared(coeffs.beta0, coeffs.gamma, r2);
    let eps = coeffs.epsilon.draw(rng, si.len())?;
    Ok(si
        .iter()
        .zip(sj)
        .zip(widths.iter().zip(eps))
        // convex-combination form lands exactly on `sj` when beta == 1
        .map(|((a, b), (w, e))| (1.0 - beta) * a + beta * b + coeffs.alpha * e * w)
        .collect())
}

/// Pure random walk `si + alpha * eps * width`.
pub fn random_walk<R: Rng + ?Sized>(
    si: &[f64],
    coeffs: &MoveCoefficients,
    widths: &[f64],
    rng: &mut R,
) -> Result<Vec<f64>> {
    let eps = coeffs.epsilon.draw(rng, si.len())?;
    Ok(si
        .iter()
        .zip(widths.iter().zip(eps))
        .map(|(a, (w, e))| a + coeffs.alpha * e * w)
        .collect())
}

pub(crate) fn relocate(state: &mut SwarmState, i: usize, mut next: Vec<f64>, objective: &Objective) {
    objective.clamp(&mut next);
    let f = &mut state.fireflies[i];
    f.position = next;
    f.fitness = None;
}

fn pairwise_sweep(state: &mut SwarmState, objective: &Objective, params: &FaParams) -> Result<()> {
    let coeffs = params.coefficients(state.t);
    let widths = objective.widths();
    let brightness: Vec<f64> = state.fireflies.iter().map(Firefly::intensity).collect();
    let snapshot: Option<Vec<Vec<f64>>> = match params.update_scheme {
        UpdateScheme::Synchronous => Some(state.fireflies.iter().map(|f| f.position.clone()).collect()),
        UpdateScheme::Asynchronous => None,
    };
    let n = state.fireflies.len();
    for i in 0..n {
        let mut attracted = false;
        for j in 0..n {
            if brightness[j] <= brightness[i] {
                continue;
            }
            let target = match &snapshot {
                Some(s) => &s[j],
                None => &state.fireflies[j].position,
            };
            let next = move_firefly(&state.fireflies[i].position, target, &coeffs, &widths, &mut state.rng)?;
            relocate(state, i, next, objective);
            attracted = true;
        }
        if !attracted && !params.elitism {
            let next = random_walk(&state.fireflies[i].position, &coeffs, &widths, &mut state.rng)?;
            relocate(state, i, next, objective);
        }
    }
    Ok(())
}

/// One generation. Returns `BudgetExhausted` if called on a finished swarm.
pub fn step(state: &mut SwarmState, objective: &mut Objective, params: &FaParams) -> Result<()> {
    if state.is_complete() {
        return Err(FaError::BudgetExhausted);
    }
    evaluate(state, objective)?;
    // a budget cut mid-pass leaves moved fireflies unevaluated; best-so-far
    // was already updated by `evaluate`
    if state.fireflies.iter().all(Firefly::is_evaluated) {
        order(state)?;
        find_best(state)?;
        if params.elitism && params.elitist_trials > 0 && !state.is_complete() {
            variants::elitist_best_move(state, params.elitist_trials, params, objective)?;
        }
        if !state.is_complete() {
            match params.movement {
                MovementRule::Pairwise => pairwise_sweep(state, objective, params)?,
                MovementRule::GlobalBestPull => variants::global_best_pull_step(state, objective, params)?,
            }
        }
    }
    state.t += 1;
    Ok(())
}

pub(crate) fn trace_point(state: &SwarmState) -> TracePoint {
    TracePoint {
        generation: state.t.saturating_sub(1),
        fes_used: state.fes_used,
        best_fitness: state.best_fitness().unwrap_or(f64::INFINITY),
    }
}

/// Runs the base loop until the evaluation budget is spent. `objective` is
/// cloned, so a dynamic objective restarts from its initial state each run.
pub fn run(objective: &Objective, params: &FaParams, seed: u64) -> Result<RunReport> {
    let started = Instant::now();
    let mut objective = objective.clone();
    let mut state = initialize(&objective, params, seed)?;
    let mut trace = Vec::new();
    while !state.is_complete() {
        step(&mut state, &mut objective, params)?;
        trace.push(trace_point(&state));
    }
    Ok(RunReport {
        trace,
        final_best: state.best.clone().ok_or(FaError::Unevaluated)?,
        fes_total: state.fes_used,
        seed,
        wall_time: started.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks;
    use crate::params::EpsilonKind;

    fn sphere(dim: usize) -> Objective {
        benchmarks::lookup("sphere", dim).unwrap()
    }

    fn coeffs(alpha: f64, beta0: f64, gamma: f64) -> MoveCoefficients {
        MoveCoefficients {
            alpha,
            beta0,
            gamma,
            epsilon: EpsilonKind::Gaussian,
        }
    }

    fn evaluated(fitness: &[f64]) -> SwarmState {
        let mut s = SwarmState::from_positions(fitness.iter().map(|&f| vec![f]).collect(), 1_000, 0);
        for (ff, &f) in s.fireflies.iter_mut().zip(fitness) {
            ff.fitness = Some(f);
        }
        s
    }

    #[test]
    fn move_examples() {
        let mut rng = SwarmRng::seed_from_u64(1);
        let si = [0.3, -1.7, 2.2];
        let sj = [1.1, 0.4, -3.9];
        let w = [1.0; 3];
        assert_eq!(move_firefly(&si, &sj, &coeffs(0.0, 0.0, 1.0), &w, &mut rng).unwrap(), si);
        assert_eq!(move_firefly(&si, &sj, &coeffs(0.0, 1.0, 0.0), &w, &mut rng).unwrap(), sj);

        let a = [0.0, 0.0];
        let b = [1.0, 0.0];
        let moved = move_firefly(&a, &b, &coeffs(0.0, 1.0, 1e6), &[1.0, 1.0], &mut rng).unwrap();
        assert!(moved.iter().zip(&a).all(|(m, x)| (m - x).abs() < 1e-6));
        assert!(move_firefly(&a, &si, &coeffs(0.0, 1.0, 1.0), &[1.0, 1.0], &mut rng).is_err());
    }

    #[test]
    fn initialize_is_deterministic_and_in_bounds() {
        let obj = Objective::new("box", vec![-5.0; 2], vec![5.0; 2], |_| 0.0).unwrap();
        let p = FaParams { pop_size: 10, ..FaParams::default() };
        let a = initialize(&obj, &p, 42).unwrap();
        let b = initialize(&obj, &p, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.fireflies.len(), 10);
        assert!(a.fireflies.iter().all(|f| obj.contains(&f.position) && f.fitness.is_none()));
        assert_eq!((a.t, a.fes_used), (0, 0));
    }

    #[test]
    fn initialize_sample_mean_is_central() {
        let obj = Objective::new("unit", vec![0.0; 3], vec![1.0; 3], |_| 0.0).unwrap();
        let p = FaParams { pop_size: 10_000, max_fes: 10_000, ..FaParams::default() };
        let s = initialize(&obj, &p, 9).unwrap();
        for d in 0..3 {
            let mean = s.fireflies.iter().map(|f| f.position[d]).sum::<f64>() / 10_000.0;
            assert!((0.45..=0.55).contains(&mean), "dim {d}: {mean}");
        }
    }

    #[test]
    fn evaluate_respects_budget() {
        let mut obj = sphere(2);
        let p = FaParams { pop_size: 40, max_fes: 100, ..FaParams::default() };
        let mut s = initialize(&obj, &p, 1).unwrap();
        assert_eq!(evaluate(&mut s, &mut obj).unwrap(), 40);
        assert_eq!(evaluate(&mut s, &mut obj).unwrap(), 40);
        assert!(!s.is_complete());
        assert_eq!(evaluate(&mut s, &mut obj).unwrap(), 20);
        assert!(s.is_complete());
        assert_eq!(s.fes_used, 100);
    }

    #[test]
    fn evaluate_at_origin_and_best_is_monotone() {
        let mut obj = sphere(3);
        let mut s = SwarmState::from_positions(vec![vec![0.0; 3], vec![1.0; 3]], 10, 0);
        evaluate(&mut s, &mut obj).unwrap();
        assert_eq!(s.fireflies[0].fitness, Some(0.0));
        let before = s.best_fitness().unwrap();
        s.fireflies[0].position = vec![2.0; 3];
        evaluate(&mut s, &mut obj).unwrap();
        assert!(s.best_fitness().unwrap() <= before);
    }

    #[test]
    fn nan_fitness_names_position() {
        let mut obj = Objective::new("nan", vec![0.0], vec![1.0], |_| f64::NAN).unwrap();
        let mut s = SwarmState::from_positions(vec![vec![0.5], vec![0.25]], 10, 0);
        assert_eq!(
            evaluate(&mut s, &mut obj),
            Err(FaError::NanFitness { position: vec![0.5] })
        );
    }

    #[test]
    fn order_examples() {
        let mut s = evaluated(&[3.0, 1.0, 2.0]);
        order(&mut s).unwrap();
        let got: Vec<f64> = s.fireflies.iter().map(|f| f.fitness.unwrap()).collect();
        assert_eq!(got, [1.0, 2.0, 3.0]);
        let again = s.clone();
        order(&mut s).unwrap();
        assert_eq!(s, again);

        let mut ties = evaluated(&[7.0, 7.0, 7.0]);
        for (i, f) in ties.fireflies.iter_mut().enumerate() {
            f.position = vec![i as f64];
        }
        order(&mut ties).unwrap();
        let pos: Vec<f64> = ties.fireflies.iter().map(|f| f.position[0]).collect();
        assert_eq!(pos, [0.0, 1.0, 2.0]);

        let mut raw = SwarmState::from_positions(vec![vec![0.0]; 2], 10, 0);
        assert_eq!(order(&mut raw), Err(FaError::Unevaluated));
    }

    #[test]
    fn find_best_examples() {
        let mut s = evaluated(&[3.0, 1.0, 2.0]);
        assert_eq!(find_best(&mut s).unwrap().fitness, Some(1.0));
        let mut one = evaluated(&[4.5]);
        assert_eq!(find_best(&mut one).unwrap().fitness, Some(4.5));

        let mut hist = evaluated(&[5.0, 6.0]);
        hist.best = Some(Firefly { position: vec![9.0], fitness: Some(4.0) });
        assert_eq!(find_best(&mut hist).unwrap().fitness, Some(5.0));
        assert_eq!(hist.best_fitness(), Some(4.0));

        let mut empty = SwarmState::from_positions(vec![], 10, 0);
        assert_eq!(find_best(&mut empty), Err(FaError::EmptyPopulation));
    }

    #[test]
    fn single_elitist_firefly_holds_position() {
        let mut obj = sphere(2);
        let p = FaParams { elitism: true, ..FaParams::default() };
        let mut s = SwarmState::from_positions(vec![vec![1.0, -2.0]], 100, 5);
        step(&mut s, &mut obj, &p).unwrap();
        assert_eq!(s.fireflies[0].position, vec![1.0, -2.0]);
    }

    #[test]
    fn null_dynamics_leave_positions_alone() {
        let mut obj = sphere(2);
        let p = FaParams { alpha: 0.0, beta0: 0.0, pop_size: 6, max_fes: 600, ..FaParams::default() };
        let mut s = initialize(&obj, &p, 3).unwrap();
        for _ in 0..5 {
            let mut before: Vec<Vec<f64>> = s.fireflies.iter().map(|f| f.position.clone()).collect();
            step(&mut s, &mut obj, &p).unwrap();
            let mut after: Vec<Vec<f64>> = s.fireflies.iter().map(|f| f.position.clone()).collect();
            before.sort_by(|a, b| a.partial_cmp(b).unwrap());
            after.sort_by(|a, b| a.partial_cmp(b).unwrap());
            assert_eq!(before, after);
        }
    }

    #[test]
    fn steps_are_deterministic() {
        let p = FaParams { pop_size: 8, max_fes: 1_000, ..FaParams::default() };
        let go = || {
            let mut obj = sphere(3);
            let mut s = initialize(&obj, &p, 77).unwrap();
            for _ in 0..10 {
                step(&mut s, &mut obj, &p).unwrap();
            }
            s
        };
        assert_eq!(go(), go());
    }

    #[test]
    fn run_budget_edges() {
        let p = FaParams { pop_size: 20, max_fes: 20, ..FaParams::default() };
        let r = run(&sphere(2), &p, 1).unwrap();
        assert_eq!(r.trace.len(), 1);
        assert_eq!(r.fes_total, 20);

        let p = FaParams { pop_size: 20, max_fes: 10_000, ..FaParams::default() };
        let r = run(&sphere(2), &p, 1).unwrap();
        assert!(r.final_best.fitness.unwrap() < r.trace[0].best_fitness);
        assert_eq!(r.fes_total, 10_000);
        assert!(r.trace.windows(2).all(|w| w[1].best_fitness <= w[0].best_fitness));
    }

    #[test]
    fn step_after_completion_is_an_error() {
        let mut obj = sphere(2);
        let p = FaParams { pop_size: 4, max_fes: 4, ..FaParams::default() };
        let mut s = initialize(&obj, &p, 0).unwrap();
        step(&mut s, &mut obj, &p).unwrap();
        assert_eq!(step(&mut s, &mut obj, &p), Err(FaError::BudgetExhausted));
    }
}
