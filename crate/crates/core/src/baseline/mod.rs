//! Reference optimizers for comparison runs.

mod ga;
mod pso;

pub use ga::{ga_optimize, GaParams};
pub use pso::{pso_optimize, PsoParams};
