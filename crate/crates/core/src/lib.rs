//! Firefly algorithm toolkit.
//!
//! The crate is organised around a seeded, fully deterministic swarm loop
//! ([`swarm`]), the closed-form light and attraction laws it relies on
//! ([`equations`]), pluggable random steps and parameter schedules
//! ([`randomization`]), variant strategies layered over the base loop
//! ([`variants`]) and a registry of benchmark objectives ([`benchmarks`]).
//!
//! All objectives are minimised. A firefly's brightness is the negated
//! objective value, so a dimmer firefly moves toward any brighter one.
//!
//! ```
//! use firefly_core::{benchmarks, params::FaParams, swarm};
//!
//! let sphere = benchmarks::lookup("sphere", 2).unwrap();
//! let params = FaParams { max_fes: 2_000, ..FaParams::default() };
//! let report = swarm::run(&sphere, &params, 7).unwrap();
//! assert!(report.final_best.fitness.unwrap() < 1.0);
//! ```

// `!(x > 0.0)` style checks are deliberate: they also reject NaN
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod benchmarks;
pub mod equations;
pub mod error;
pub mod objective;
pub mod params;
pub mod randomization;
pub mod swarm;
pub mod variants;

pub use error::{FaError, Result};
pub use objective::Objective;
pub use params::FaParams;
pub use swarm::{Firefly, RunReport, SwarmState};
