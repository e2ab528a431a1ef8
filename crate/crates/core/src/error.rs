use thiserror::Error;

pub type Result<T> = std::result::Result<T, FaError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FaError {
    #[error("`{name}` must be non-negative, got {value}")]
    Negative { name: &'static str, value: f64 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("invalid bounds in dimension {dim}: lower {lower} is not below upper {upper}")]
    InvalidBounds { dim: usize, lower: f64, upper: f64 },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParam { name: &'static str, reason: String },

    #[error("`{name}` = {value} is outside {range}")]
    OutOfRange {
        name: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("objective returned NaN at position {position:?}")]
    NanFitness { position: Vec<f64> },

    #[error("population has not been evaluated")]
    Unevaluated,

    #[error("empty population")]
    EmptyPopulation,

    #[error("evaluation budget exhausted")]
    BudgetExhausted,

    #[error("unknown benchmark `{0}`")]
    UnknownBenchmark(String),

    #[error("swarms {first} and {second} share rng seed {seed}")]
    OverlappingStreams { first: usize, second: usize, seed: u64 },
}
