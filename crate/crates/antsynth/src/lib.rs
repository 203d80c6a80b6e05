//! Experiment harness for NOABS linear-array synthesis: TOML run
//! configurations, seeded runs, optimizer comparisons, and CSV/JSON
//! artifacts. The numerics live in [`antsynth_core`].

// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
mod error;
pub mod experiment;
pub mod output;
mod parallel;

pub use config::{load_config, ExperimentConfig};
pub use error::{HarnessError, Result};
pub use experiment::{compare, run_experiment, ComparisonRow, RunSummary};
pub use parallel::Parallel;
