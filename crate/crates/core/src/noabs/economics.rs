//! Bridge cost economics: traffic rates with and without a bridge.
//!
//! Without a bridge, `N` ants cover the trail plus a detour:
//! `N / (L_T + L_A)`. A bridge sequesters `n_b` builders; because builders
//! are poorer foragers, each one only costs `1/α` of a forager, leaving
//! `N − n_b/α` effective foragers over the bridged distance `f`:
//! `ρ = (N − n_b/α) / f`.

use alloc::format;

use crate::{Error, Result};

/// Forager/builder conversion coefficient measured on army ants.
pub const REID_ALPHA: f64 = 17.02;

/// Ants per unit length when the gap has to be walked around.
pub fn benefit_rate_no_bridge(colony_size: usize, trail_length: f64, detour_length: f64) -> Result<f64> {
    if colony_size == 0 {
        return Err(Error::InvalidInput("colony size must be positive".into()));
    }
    if !(trail_length >= 0.0) || !(detour_length >= 0.0) {
        return Err(Error::InvalidInput(format!(
            "lengths must be non-negative, got L_T={trail_length}, L_A={detour_length}"
        )));
    }
    let total = trail_length + detour_length;
    if total == 0.0 {
        return Err(Error::DivisionByZero("total trail length is zero"));
    }
    Ok(colony_size as f64 / total)
}

/// Colony members still foraging once `bridge_ants` are built into a bridge.
/// With `alpha = 1` this is the plain head count `N − n_b`.
pub fn effective_foragers(colony_size: usize, bridge_ants: usize, alpha: f64) -> Result<f64> {
    if colony_size == 0 {
        return Err(Error::InvalidInput("colony size must be positive".into()));
    }
    if !(alpha > 0.0) {
        return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    let remaining = colony_size as f64 - bridge_ants as f64 / alpha;
    if remaining <= 0.0 {
        return Err(Error::InfeasibleBridge(format!(
            "{bridge_ants} bridge ants consume a colony of {colony_size} at alpha={alpha}"
        )));
    }
    Ok(remaining)
}

/// Ants per unit length over the bridged path of length `bridged_length`.
pub fn bridge_rate(colony_size: usize, bridge_ants: usize, alpha: f64, bridged_length: f64) -> Result<f64> {
    if !(bridged_length > 0.0) {
        return Err(Error::DivisionByZero("bridged path length must be positive"));
    }
    Ok(effective_foragers(colony_size, bridge_ants, alpha)? / bridged_length)
}
