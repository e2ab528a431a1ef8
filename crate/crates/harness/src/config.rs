//! Experiment configuration: a flat TOML document.
//!
//! ```toml
//! benchmark = "rastrigin"
//! dim = 5
//! variant = "elitist"
//! repetitions = 30
//! base_seed = 1
//! gamma = 3.5
//! ```
//!
//! Unknown keys, keys that do not apply to the chosen variant, and keys that
//! a variant fixes itself are all rejected, with the key named in the error.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use firefly_core::benchmarks;
use firefly_core::params::{EpsilonKind, MovementRule, UpdateScheme};
use firefly_core::randomization::{ChaoticMap, ScheduleKind};
use firefly_core::variants::{reduction_mode, MultiSwarmConfig, ReductionMode};
use firefly_core::{FaError, FaParams, Objective};
use serde::{Deserialize, Serialize};
use toml::{Table, Value};

use crate::error::{HarnessError, Result};

pub const DEFAULT_DIM: usize = 2;
pub const DEFAULT_SUCCESS_THRESHOLD: f64 = 1e-2;
pub const DEFAULT_OUTPUT_DIR: &str = "results";
/// Probes per generation for the best firefly when elitism is on.
pub const DEFAULT_ELITIST_TRIALS: usize = 5;
pub const DEFAULT_LEVY_LAMBDA: f64 = 1.5;
pub const DEFAULT_CHAOS_X0: f64 = 0.7;
pub const DEFAULT_NUM_SWARMS: usize = 5;

const REQUIRED: [&str; 4] = ["benchmark", "variant", "repetitions", "base_seed"];

const OPTIONAL: [&str; 19] = [
    "dim",
    "alpha",
    "beta0",
    "gamma",
    "pop_size",
    "max_fes",
    "success_threshold",
    "output_dir",
    "update_scheme",
    "elitism",
    "elitist_trials",
    "alpha_decay",
    "levy_lambda",
    "chaos_x0",
    "num_swarms",
    "exclusion_radius",
    "anticonvergence_radius",
    "sentinel_count",
    "alpha_rewind",
];

const MULTISWARM_KEYS: [&str; 5] = [
    "num_swarms",
    "exclusion_radius",
    "anticonvergence_radius",
    "sentinel_count",
    "alpha_rewind",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Base,
    Elitist,
    GaussianPull,
    Levy,
    ChaoticAlpha,
    Multiswarm,
    SaLike,
    DeLike,
    PsoLike,
}

impl Variant {
    pub const ALL: [Variant; 9] = [
        Variant::Base,
        Variant::Elitist,
        Variant::GaussianPull,
        Variant::Levy,
        Variant::ChaoticAlpha,
        Variant::Multiswarm,
        Variant::SaLike,
        Variant::DeLike,
        Variant::PsoLike,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Variant::Base => "base",
            Variant::Elitist => "elitist",
            Variant::GaussianPull => "gaussian_pull",
            Variant::Levy => "levy",
            Variant::ChaoticAlpha => "chaotic_alpha",
            Variant::Multiswarm => "multiswarm",
            Variant::SaLike => "sa_like",
            Variant::DeLike => "de_like",
            Variant::PsoLike => "pso_like",
        }
    }

    pub fn reduction(self) -> Option<ReductionMode> {
        match self {
            Variant::SaLike => Some(ReductionMode::SaLike),
            Variant::DeLike => Some(ReductionMode::DeLike),
            Variant::PsoLike => Some(ReductionMode::PsoLike),
            _ => None,
        }
    }

    /// Parameters the variant sets itself and therefore refuses as overrides.
    fn fixed_keys(self) -> &'static [&'static str] {
        match self {
            Variant::SaLike => &["beta0"],
            Variant::DeLike => &["beta0", "gamma"],
            Variant::PsoLike => &["gamma"],
            Variant::ChaoticAlpha => &["alpha_decay"],
            _ => &[],
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Variant {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        Variant::ALL.into_iter().find(|v| v.as_str() == s).ok_or_else(|| {
            let names: Vec<_> = Variant::ALL.iter().map(|v| v.as_str()).collect();
            HarnessError::invalid("variant", format!("unknown variant `{s}`, expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub benchmark: String,
    pub dim: usize,
    pub variant: Variant,
    pub params: FaParams,
    /// Present exactly when `variant` is `multiswarm`.
    pub multiswarm: Option<MultiSwarmConfig>,
    pub repetitions: u64,
    pub base_seed: u64,
    /// Allowed gap between the final best and the known optimum value.
    pub success_threshold: f64,
    pub output_dir: PathBuf,
}

impl ExperimentConfig {
    /// A config with every default applied for `variant`.
    pub fn preset(benchmark: &str, dim: usize, variant: Variant, repetitions: u64, base_seed: u64) -> Result<Self> {
        let mut params = FaParams::default();
        match variant {
            Variant::Elitist => {
                params.elitism = true;
                params.elitist_trials = DEFAULT_ELITIST_TRIALS;
            }
            Variant::GaussianPull => {
                params.epsilon = EpsilonKind::Gaussian;
                params.movement = MovementRule::GlobalBestPull;
            }
            Variant::Levy => params.epsilon = EpsilonKind::Levy { lambda: DEFAULT_LEVY_LAMBDA },
            Variant::ChaoticAlpha => {
                params.schedule = ScheduleKind::Chaotic {
                    map: ChaoticMap::Logistic,
                    x0: DEFAULT_CHAOS_X0,
                }
            }
            _ => {}
        }
        let multiswarm = (variant == Variant::Multiswarm)
            .then(|| MultiSwarmConfig::for_population(params.pop_size, DEFAULT_NUM_SWARMS))
            .transpose()
            .map_err(|e| core_error(e, "pop_size"))?;
        let cfg = Self {
            benchmark: benchmark.to_string(),
            dim,
            variant,
            params,
            multiswarm,
            repetitions,
            base_seed,
            success_threshold: DEFAULT_SUCCESS_THRESHOLD,
            output_dir: PathBuf::from(DEFAULT_OUTPUT_DIR),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Seed of repetition `r`.
    pub fn seed(&self, r: u64) -> u64 {
        self.base_seed + r
    }

    pub fn objective(&self) -> Result<Objective> {
        benchmarks::lookup(&self.benchmark, self.dim).map_err(|e| match e {
            FaError::UnknownBenchmark(_) => HarnessError::invalid("benchmark", e.to_string()),
            other => core_error(other, "benchmark"),
        })
    }

    /// Parameters actually used for the run seeded with `seed`.
    pub fn run_params(&self, seed: u64) -> FaParams {
        match self.variant.reduction() {
            Some(mode) => reduction_mode(mode, &self.params, seed),
            None => self.params.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(HarnessError::invalid("repetitions", "must be positive"));
        }
        if self.base_seed.checked_add(self.repetitions - 1).is_none() {
            return Err(HarnessError::invalid(
                "base_seed",
                format!("base_seed + repetitions overflows a 64-bit seed ({})", self.base_seed),
            ));
        }
        if !(self.success_threshold >= 0.0) || self.success_threshold.is_infinite() {
            return Err(HarnessError::invalid(
                "success_threshold",
                format!("must be finite and non-negative, got {}", self.success_threshold),
            ));
        }
        self.objective()?;
        self.params.validate().map_err(|e| core_error(e, "params"))?;
        match (&self.multiswarm, self.variant) {
            (Some(ms), Variant::Multiswarm) => {
                ms.validate(self.dim).map_err(|e| core_error(e, "multiswarm"))?;
                if ms.population() != self.params.pop_size {
                    return Err(HarnessError::invalid(
                        "num_swarms",
                        format!(
                            "{} swarms of {} do not make a population of {}",
                            ms.num_swarms, ms.swarm_size, self.params.pop_size
                        ),
                    ));
                }
            }
            (None, Variant::Multiswarm) => return Err(HarnessError::invalid("variant", "multiswarm settings missing")),
            (Some(_), v) => return Err(HarnessError::invalid("variant", format!("multiswarm settings given for `{v}`"))),
            (None, _) => {}
        }
        Ok(())
    }
}

/// Maps a core validation error onto the config key that caused it.
fn core_error(e: FaError, fallback: &str) -> HarnessError {
    let name = match &e {
        FaError::Negative { name, .. } | FaError::InvalidParam { name, .. } | FaError::OutOfRange { name, .. } => name,
        _ => fallback,
    };
    let key = match name {
        "ratio" => "alpha_decay",
        "lambda" => "levy_lambda",
        "x0" => "chaos_x0",
        "swarm_size" => "pop_size",
        other => other,
    };
    HarnessError::invalid(key, e.to_string())
}

fn type_error(key: &str, expected: &str, got: &Value) -> HarnessError {
    HarnessError::invalid(key, format!("expected {expected}, got {} `{got}`", got.type_str()))
}

fn as_f64(key: &str, v: &Value) -> Result<f64> {
    match v {
        Value::Float(f) => Ok(*f),
        Value::Integer(i) => Ok(*i as f64),
        other => Err(type_error(key, "a number", other)),
    }
}

fn as_u64(key: &str, v: &Value) -> Result<u64> {
    match v {
        Value::Integer(i) if *i >= 0 => Ok(*i as u64),
        Value::Integer(i) => Err(HarnessError::invalid(key, format!("must be non-negative, got {i}"))),
        other => Err(type_error(key, "an integer", other)),
    }
}

fn as_usize(key: &str, v: &Value) -> Result<usize> {
    let n = as_u64(key, v)?;
    usize::try_from(n).map_err(|_| HarnessError::invalid(key, format!("{n} is too large")))
}

fn as_str<'a>(key: &str, v: &'a Value) -> Result<&'a str> {
    v.as_str().ok_or_else(|| type_error(key, "a string", v))
}

fn as_bool(key: &str, v: &Value) -> Result<bool> {
    v.as_bool().ok_or_else(|| type_error(key, "a boolean", v))
}

pub fn parse_config(source: &str) -> Result<ExperimentConfig> {
    let table: Table = source.parse().map_err(|e: toml::de::Error| HarnessError::Syntax(e.message().to_string()))?;

    for (key, value) in &table {
        if !REQUIRED.contains(&key.as_str()) && !OPTIONAL.contains(&key.as_str()) {
            return Err(HarnessError::UnknownKey(key.clone()));
        }
        if matches!(value, Value::Table(_) | Value::Array(_)) {
            return Err(type_error(key, "a scalar", value));
        }
    }
    let required = |key: &'static str| table.get(key).ok_or(HarnessError::MissingKey(key));

    let benchmark = as_str("benchmark", required("benchmark")?)?;
    let variant: Variant = as_str("variant", required("variant")?)?.parse()?;
    let repetitions = as_u64("repetitions", required("repetitions")?)?;
    let base_seed = as_u64("base_seed", required("base_seed")?)?;
    let dim = table.get("dim").map(|v| as_usize("dim", v)).transpose()?.unwrap_or(DEFAULT_DIM);

    for key in variant.fixed_keys() {
        if table.contains_key(*key) {
            return Err(HarnessError::invalid(*key, format!("fixed by variant `{variant}`")));
        }
    }
    let only_for = |key: &str, allowed: bool, owner: &str| {
        if table.contains_key(key) && !allowed {
            Err(HarnessError::invalid(key, format!("only applies to {owner}, not `{variant}`")))
        } else {
            Ok(())
        }
    };
    for key in MULTISWARM_KEYS {
        only_for(key, variant == Variant::Multiswarm, "variant `multiswarm`")?;
    }
    only_for("levy_lambda", variant == Variant::Levy, "variant `levy`")?;
    only_for("chaos_x0", variant == Variant::ChaoticAlpha, "variant `chaotic_alpha`")?;

    if repetitions == 0 {
        return Err(HarnessError::invalid("repetitions", "must be positive"));
    }
    let mut cfg = ExperimentConfig::preset("sphere", DEFAULT_DIM, variant, repetitions, base_seed)?;
    cfg.benchmark = benchmark.to_string();
    cfg.dim = dim;
    let p = &mut cfg.params;

    for (key, value) in &table {
        let key = key.as_str();
        match key {
            "alpha" => p.alpha = as_f64(key, value)?,
            "beta0" => p.beta0 = as_f64(key, value)?,
            "gamma" => p.gamma = as_f64(key, value)?,
            "pop_size" => p.pop_size = as_usize(key, value)?,
            "max_fes" => p.max_fes = as_u64(key, value)?,
            "success_threshold" => cfg.success_threshold = as_f64(key, value)?,
            "output_dir" => cfg.output_dir = PathBuf::from(as_str(key, value)?),
            "update_scheme" => {
                p.update_scheme = match as_str(key, value)? {
                    "asynchronous" => UpdateScheme::Asynchronous,
                    "synchronous" => UpdateScheme::Synchronous,
                    other => {
                        return Err(HarnessError::invalid(
                            key,
                            format!("expected `asynchronous` or `synchronous`, got `{other}`"),
                        ))
                    }
                }
            }
            "alpha_decay" => p.schedule = ScheduleKind::Geometric { ratio: as_f64(key, value)? },
            "levy_lambda" => p.epsilon = EpsilonKind::Levy { lambda: as_f64(key, value)? },
            "chaos_x0" => {
                p.schedule = ScheduleKind::Chaotic {
                    map: ChaoticMap::Logistic,
                    x0: as_f64(key, value)?,
                }
            }
            _ => {}
        }
    }

    if let Some(v) = table.get("elitism") {
        let on = as_bool("elitism", v)?;
        if !on && variant == Variant::Elitist {
            return Err(HarnessError::invalid("elitism", "cannot be disabled for variant `elitist`"));
        }
        if on && !p.elitism {
            p.elitism = true;
            p.elitist_trials = DEFAULT_ELITIST_TRIALS;
        }
    }
    if let Some(v) = table.get("elitist_trials") {
        if !p.elitism {
            return Err(HarnessError::invalid("elitist_trials", "requires elitism"));
        }
        p.elitist_trials = as_usize("elitist_trials", v)?;
    }

    if variant == Variant::Multiswarm {
        let num_swarms = table
            .get("num_swarms")
            .map(|v| as_usize("num_swarms", v))
            .transpose()?
            .unwrap_or(DEFAULT_NUM_SWARMS);
        let mut ms =
            MultiSwarmConfig::for_population(cfg.params.pop_size, num_swarms).map_err(|e| core_error(e, "num_swarms"))?;
        for (key, value) in &table {
            let key = key.as_str();
            match key {
                "exclusion_radius" => ms.exclusion_radius = as_f64(key, value)?,
                "anticonvergence_radius" => ms.anticonvergence_radius = as_f64(key, value)?,
                "sentinel_count" => ms.sentinel_count = as_usize(key, value)?,
                "alpha_rewind" => ms.alpha_rewind = as_u64(key, value)?,
                _ => {}
            }
        }
        cfg.multiswarm = Some(ms);
    }

    cfg.validate()?;
    Ok(cfg)
}
