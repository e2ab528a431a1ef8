use serde::{Deserialize, Serialize};

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};
use crate::experiment::{run_experiment_with, Execution, SummaryStats};
use crate::output::{field, format_float, read_rows};

pub const TABLE_HEADER: [&str; 8] = [
    "variant",
    "benchmark",
    "dim",
    "max_fes",
    "mean_best",
    "std_best",
    "success_rate",
    "mean_fes_to_success",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonRow {
    pub variant: String,
    pub benchmark: String,
    pub dim: usize,
    pub max_fes: u64,
    pub mean_best: f64,
    pub std_best: f64,
    pub success_rate: f64,
    /// Empty cell when no repetition succeeded.
    pub mean_fes_to_success: Option<f64>,
}

impl ComparisonRow {
    pub fn new(config: &ExperimentConfig, stats: &SummaryStats) -> Self {
        Self {
            variant: config.variant.to_string(),
            benchmark: config.benchmark.clone(),
            dim: config.dim,
            max_fes: config.params.max_fes,
            mean_best: stats.mean_best,
            std_best: stats.std_best,
            success_rate: stats.success_rate,
            mean_fes_to_success: stats.mean_fes_to_success,
        }
    }

    /// Whether this row carries the table columns of `stats` exactly.
    pub fn matches(&self, stats: &SummaryStats) -> bool {
        self.mean_best.to_bits() == stats.mean_best.to_bits()
            && self.std_best.to_bits() == stats.std_best.to_bits()
            && self.success_rate.to_bits() == stats.success_rate.to_bits()
            && self.mean_fes_to_success.map(f64::to_bits) == stats.mean_fes_to_success.map(f64::to_bits)
    }
}

/// Checks that all configs share a benchmark, dimension and budget.
pub fn check_comparable(configs: &[ExperimentConfig]) -> Result<()> {
    let first = configs.first().ok_or_else(|| HarnessError::Mismatch("no experiments given".into()))?;
    for c in &configs[1..] {
        if (c.benchmark.as_str(), c.dim) != (first.benchmark.as_str(), first.dim) {
            return Err(HarnessError::Mismatch(format!(
                "benchmark {} (dim {}) differs from {} (dim {})",
                c.benchmark, c.dim, first.benchmark, first.dim
            )));
        }
        if c.params.max_fes != first.params.max_fes {
            return Err(HarnessError::Mismatch(format!(
                "budget {} differs from {}",
                c.params.max_fes, first.params.max_fes
            )));
        }
    }
    Ok(())
}

/// Runs every config and tabulates them in input order.
pub fn compare_variants(configs: &[ExperimentConfig]) -> Result<Vec<ComparisonRow>> {
    compare_variants_with(configs, Execution::Parallel)
}

pub fn compare_variants_with(configs: &[ExperimentConfig], execution: Execution) -> Result<Vec<ComparisonRow>> {
    check_comparable(configs)?;
    configs
        .iter()
        .map(|c| run_experiment_with(c, execution).map(|(stats, _)| ComparisonRow::new(c, &stats)))
        .collect()
}

pub fn render_table(rows: &[ComparisonRow]) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(TABLE_HEADER).expect("writing to memory");
    for r in rows {
        w.write_record([
            r.variant.clone(),
            r.benchmark.clone(),
            r.dim.to_string(),
            r.max_fes.to_string(),
            format_float(r.mean_best),
            format_float(r.std_best),
            format_float(r.success_rate),
            r.mean_fes_to_success.map(format_float).unwrap_or_default(),
        ])
        .expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv of utf-8 fields")
}

pub fn parse_compare_table(text: &str) -> Result<Vec<ComparisonRow>> {
    read_rows(text, TABLE_HEADER)?
        .into_iter()
        .map(|(line, [variant, benchmark, dim, max_fes, mean, std, rate, fes])| {
            Ok(ComparisonRow {
                variant,
                benchmark,
                dim: field(line, "dim", &dim)?,
                max_fes: field(line, "max_fes", &max_fes)?,
                mean_best: field(line, "mean_best", &mean)?,
                std_best: field(line, "std_best", &std)?,
                success_rate: field(line, "success_rate", &rate)?,
                mean_fes_to_success: if fes.is_empty() {
                    None
                } else {
                    Some(field(line, "mean_fes_to_success", &fes)?)
                },
            })
        })
        .collect()
}
