use crate::error::{FaError, Result};
use crate::objective::Objective;
use crate::params::FaParams;
use crate::swarm::{move_firefly, relocate, SwarmState};

/// Pulls every firefly once toward the best-so-far position `g*` using the
/// move equation with `g*` as the attractor. With `gamma = 0` this is the
/// accelerated PSO update. Under elitism the current generation's best
/// fireflies hold position.
///
/// This is pull-only: no pairwise attraction is applied in the same
/// generation.
pub fn global_best_pull_step(state: &mut SwarmState, objective: &Objective, params: &FaParams) -> Result<()> {
    let target = state.best.as_ref().ok_or(FaError::Unevaluated)?.position.clone();
    let coeffs = params.coefficients(state.t);
    let widths = objective.widths();
    let generation_best = state
        .fireflies
        .iter()
        .filter_map(|f| f.fitness)
        .fold(f64::INFINITY, f64::min);
    for i in 0..state.fireflies.len() {
        if params.elitism && state.fireflies[i].fitness == Some(generation_best) {
            continue;
        }
        let next = move_firefly(&state.fireflies[i].position, &target, &coeffs, &widths, &mut state.rng)?;
        relocate(state, i, next, objective);
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks;
    use crate::swarm::{evaluate, find_best};

    fn evaluated_swarm() -> (SwarmState, Objective) {
        let mut obj = benchmarks::lookup("sphere", 2).unwrap();
        let mut s = SwarmState::from_positions(
            vec![vec![1.0, 2.0], vec![-3.0, 0.5], vec![0.25, -0.75]],
            100,
            8,
        );
        evaluate(&mut s, &mut obj).unwrap();
        find_best(&mut s).unwrap();
        (s, obj)
    }

    #[test]
    fn full_pull_lands_on_global_best() {
        let (mut s, obj) = evaluated_swarm();
        let g = s.best.clone().unwrap().position;
        let p = FaParams { gamma: 0.0, beta0: 1.0, alpha: 0.0, ..FaParams::default() };
        global_best_pull_step(&mut s, &obj, &p).unwrap();
        assert!(s.fireflies.iter().all(|f| f.position == g));
    }

    #[test]
    fn zero_coefficients_mean_no_motion() {
        let (mut s, obj) = evaluated_swarm();
        let before: Vec<_> = s.fireflies.iter().map(|f| f.position.clone()).collect();
        let p = FaParams { beta0: 0.0, alpha: 0.0, ..FaParams::default() };
        global_best_pull_step(&mut s, &obj, &p).unwrap();
        let after: Vec<_> = s.fireflies.iter().map(|f| f.position.clone()).collect();
        assert_eq!(before, after);
    }

    #[test]
    fn needs_a_best() {
        let obj = benchmarks::lookup("sphere", 2).unwrap();
        let mut s = SwarmState::from_positions(vec![vec![0.0, 0.0]; 2], 10, 0);
        assert_eq!(
            global_best_pull_step(&mut s, &obj, &FaParams::default()),
            Err(FaError::Unevaluated)
        );
    }
}
