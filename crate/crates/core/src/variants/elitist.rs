use crate::error::{FaError, Result};
use crate::objective::Objective;
use crate::params::FaParams;
use crate::randomization::gaussian_step;
use crate::swarm::{Firefly, SwarmState};

/// Probes `m` random directions around the brightest firefly and moves it to
/// the best strictly improving probe, if any. Each probe is displaced by
/// `alpha * width` along a unit vector drawn uniformly on the sphere; ties
/// between equally good probes go to the earliest one. Probes stop early when
/// the budget runs out. Returns the number of evaluations spent.
pub fn elitist_best_move(
    state: &mut SwarmState,
    m: usize,
    params: &FaParams,
    objective: &mut Objective,
) -> Result<usize> {
    if m == 0 {
        return Ok(0);
    }
    let (idx, current) = state
        .fireflies
        .iter()
        .enumerate()
        .filter_map(|(i, f)| f.fitness.map(|v| (i, v)))
        .fold(None::<(usize, f64)>, |acc, (i, v)| match acc {
            Some((_, bv)) if bv <= v => acc,
            _ => Some((i, v)),
        })
        .ok_or(FaError::Unevaluated)?;

    let alpha = params.coefficients(state.t).alpha;
    let widths = objective.widths();
    let origin = state.fireflies[idx].position.clone();
    let mut accepted: Option<(f64, Vec<f64>)> = None;
    let mut spent = 0;
    for _ in 0..m {
        if state.is_complete() {
            break;
        }
        let mut dir = gaussian_step(&mut state.rng, origin.len())?;
        let norm = dir.iter().map(|d| d * d).sum::<f64>().sqrt();
        if norm > 0.0 {
            dir.iter_mut().for_each(|d| *d /= norm);
        } else {
            dir[0] = 1.0;
        }
        let mut trial: Vec<f64> = origin
            .iter()
            .zip(dir.iter().zip(&widths))
            .map(|(x, (d, w))| x + alpha * w * d)
            .collect();
        objective.clamp(&mut trial);
        let value = objective.eval(&trial);
        state.fes_used += 1;
        spent += 1;
        if value.is_nan() {
            return Err(FaError::NanFitness { position: trial });
        }
        let best_so_far = accepted.as_ref().map_or(current, |(v, _)| *v);
        if value < best_so_far {
            accepted = Some((value, trial));
        }
    }
    if let Some((value, position)) = accepted {
        let moved = Firefly {
            position,
            fitness: Some(value),
        };
        state.offer_best(&moved);
        state.fireflies[idx] = moved;
    }
    Ok(spent)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::benchmarks;
    use crate::swarm::evaluate;

    fn setup(positions: Vec<Vec<f64>>) -> (SwarmState, Objective) {
        let mut obj = benchmarks::lookup("sphere", 2).unwrap();
        let mut s = SwarmState::from_positions(positions, 1_000, 4);
        evaluate(&mut s, &mut obj).unwrap();
        (s, obj)
    }

    #[test]
    fn optimum_is_never_left() {
        let (mut s, mut obj) = setup(vec![vec![0.0, 0.0], vec![1.0, 1.0]]);
        let p = FaParams::default();
        assert_eq!(elitist_best_move(&mut s, 10, &p, &mut obj).unwrap(), 10);
        assert_eq!(s.fireflies[0].position, vec![0.0, 0.0]);
        assert_eq!(s.fes_used, 12);
    }

    #[test]
    fn zero_trials_is_a_no_op() {
        let (mut s, mut obj) = setup(vec![vec![2.0, 1.0], vec![1.0, 1.0]]);
        let before = s.clone();
        assert_eq!(elitist_best_move(&mut s, 0, &FaParams::default(), &mut obj).unwrap(), 0);
        assert_eq!(s, before);
    }

    #[test]
    fn never_worsens_and_respects_budget() {
        let (mut s, mut obj) = setup(vec![vec![2.0, 1.0], vec![3.0, 1.0]]);
        s.max_fes = 5;
        let before = s.best_fitness().unwrap();
        let spent = elitist_best_move(&mut s, 10, &FaParams::default(), &mut obj).unwrap();
        assert_eq!(spent, 3);
        assert!(s.best_fitness().unwrap() <= before);
        assert!(s.fireflies[0].fitness.unwrap() <= before);
    }
}
