//! Seeded experiment runner for the firefly toolkit.
//!
//! An experiment is a benchmark, a variant and a number of repetitions;
//! repetition `r` runs with seed `base_seed + r`. Results are a JSON summary,
//! one convergence curve per repetition and a median curve, all
//! byte-identical across reruns and across parallel and sequential execution.

// `!(x >= 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod compare;
pub mod config;
pub mod error;
pub mod experiment;
pub mod output;

pub use compare::{compare_variants, parse_compare_table, render_table, ComparisonRow};
pub use config::{parse_config, ExperimentConfig, Variant};
pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, run_experiment_with, Execution, SummaryStats};
pub use output::{emit_results, parse_curve};
