//! Array-factor synthesis of symmetric linear arrays with the NOABS
//! ant-bridge metaheuristic.
//!
//! The crate is `no_std` (it needs `alloc`). It contains:
//!
//! - [`array`]: array factor of a symmetric 2M-element linear array, sampled
//!   radiation patterns and their metrics (side lobe level, null depth,
//!   main-lobe bounds).
//! - [`mask`]: the desired-pattern mask and the one-sided violation integral
//!   used as the optimization fitness.
//! - [`noabs`]: the ant-bridge optimizer (pheromone-guided foragers plus
//!   bridges between elite anchors, governed by the bridge cost economics and
//!   a force-balance stability test).
//! - [`baseline`]: global-best particle swarm and a real-coded genetic
//!   algorithm sharing the same [`OptResult`] contract.
//!
//! Every optimizer draws randomness from a caller-supplied generator and
//! generates each candidate batch before evaluating it, so results depend only
//! on the seed, never on how [`Objective::evaluate_batch`] is scheduled.
#![no_std]
// `!(x > 0.0)` style checks are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod array;
pub mod baseline;
mod error;
pub mod mask;
pub mod noabs;
mod objective;
mod sampling;

pub use error::{Error, Result};
pub use objective::{Objective, OptResult};
