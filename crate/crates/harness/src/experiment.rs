use firefly_core::swarm;
use firefly_core::variants::run_multiswarm;
use firefly_core::RunReport;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::config::{ExperimentConfig, Variant};
use crate::error::{HarnessError, Result};

/// How repetitions are scheduled. Both produce identical results.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Execution {
    #[default]
    Parallel,
    Sequential,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryStats {
    pub mean_best: f64,
    /// Sample standard deviation; zero for a single repetition.
    pub std_best: f64,
    pub min_best: f64,
    pub max_best: f64,
    /// Fraction of repetitions whose final best is within
    /// `success_threshold` of the known optimum value.
    pub success_rate: f64,
    /// Efficiency measure: mean evaluations until the success target was
    /// first reached, over successful repetitions only.
    pub mean_fes_to_success: Option<f64>,
}

impl SummaryStats {
    /// Statistics over `reports`, which must be non-empty. `target` is the
    /// fitness a run has to reach to count as a success.
    pub fn from_reports(reports: &[RunReport], target: f64) -> Self {
        assert!(!reports.is_empty(), "no reports to summarize");
        let finals: Vec<f64> = reports.iter().map(final_fitness).collect();
        let n = finals.len() as f64;
        let mean = finals.iter().sum::<f64>() / n;
        let std = if finals.len() > 1 {
            (finals.iter().map(|f| (f - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let to_success: Vec<f64> = reports
            .iter()
            .filter(|r| final_fitness(r) <= target)
            .filter_map(|r| r.trace.iter().find(|p| p.best_fitness <= target).map(|p| p.fes_used as f64))
            .collect();
        let successes = reports.iter().filter(|r| final_fitness(r) <= target).count();
        Self {
            mean_best: mean,
            std_best: std,
            min_best: finals.iter().copied().fold(f64::INFINITY, f64::min),
            max_best: finals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            success_rate: successes as f64 / n,
            mean_fes_to_success: (!to_success.is_empty())
                .then(|| to_success.iter().sum::<f64>() / to_success.len() as f64),
        }
    }
}

fn final_fitness(r: &RunReport) -> f64 {
    r.final_best.fitness.unwrap_or(f64::INFINITY)
}

/// Fitness a run must reach to count as a success under `config`.
pub fn success_target(config: &ExperimentConfig) -> Result<f64> {
    let objective = config.objective()?;
    let optimum = objective
        .known_optimum()
        .ok_or_else(|| HarnessError::invalid("benchmark", format!("`{}` has no known optimum", config.benchmark)))?;
    Ok(optimum.value + config.success_threshold)
}

/// Executes repetition `r` of `config`.
pub fn run_repetition(config: &ExperimentConfig, r: u64) -> Result<RunReport> {
    let seed = config.seed(r);
    let objective = config.objective()?;
    let params = config.run_params(seed);
    let report = match (config.variant, &config.multiswarm) {
        (Variant::Multiswarm, Some(ms)) => run_multiswarm(&objective, &params, ms, seed),
        _ => swarm::run(&objective, &params, seed),
    };
    report.map_err(|source| HarnessError::Run { seed, source })
}

pub fn run_experiment(config: &ExperimentConfig) -> Result<(SummaryStats, Vec<RunReport>)> {
    run_experiment_with(config, Execution::Parallel)
}

pub fn run_experiment_with(config: &ExperimentConfig, execution: Execution) -> Result<(SummaryStats, Vec<RunReport>)> {
    config.validate()?;
    let target = success_target(config)?;
    // both paths collect in repetition order, so aggregation never sees
    // scheduling order
    let reports: Vec<RunReport> = match execution {
        Execution::Parallel => (0..config.repetitions)
            .into_par_iter()
            .map(|r| run_repetition(config, r))
            .collect::<Result<_>>()?,
        Execution::Sequential => (0..config.repetitions)
            .map(|r| run_repetition(config, r))
            .collect::<Result<_>>()?,
    };
    Ok((SummaryStats::from_reports(&reports, target), reports))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(reps: u64) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::preset("sphere", 2, Variant::Base, reps, 11).unwrap();
        cfg.params.max_fes = 2_000;
        cfg
    }

    #[test]
    fn single_repetition_collapses_stats() {
        let (stats, reports) = run_experiment(&config(1)).unwrap();
        assert_eq!(reports.len(), 1);
        assert_eq!(stats.mean_best, stats.min_best);
        assert_eq!(stats.mean_best, stats.max_best);
        assert_eq!(stats.std_best, 0.0);
    }

    #[test]
    fn repetitions_use_consecutive_seeds() {
        let (_, reports) = run_experiment(&config(4)).unwrap();
        let seeds: Vec<u64> = reports.iter().map(|r| r.seed).collect();
        assert_eq!(seeds, vec![11, 12, 13, 14]);
    }

    #[test]
    fn stats_are_ordered() {
        let (stats, _) = run_experiment(&config(6)).unwrap();
        assert!(stats.min_best <= stats.mean_best && stats.mean_best <= stats.max_best);
        assert!((0.0..=1.0).contains(&stats.success_rate));
        assert_eq!(stats.mean_fes_to_success.is_some(), stats.success_rate > 0.0);
    }
}
