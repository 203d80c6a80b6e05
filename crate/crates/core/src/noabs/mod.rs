//! NOABS: nature-optimized ant bridging search.
//!
//! Each iteration spends a budget of `N` evaluations:
//!
//! 1. The best archive member is paired with the runner-up (or a longer,
//!    equally profitable span) and a bridge between them is priced.
//! 2. An accepted bridge places `n_b` builders along the span. Their fitness
//!    sets the member loads; if the bridge stands its members join the
//!    colony, otherwise it collapses and `n_b` uniformly random ants replace
//!    them.
//! 3. The remaining budget goes to foragers sampled from the pheromone
//!    archive.
//! 4. The archive keeps the `K` best distinct solutions, so the best-so-far
//!    never gets worse.

mod bridge;
mod colony;
mod economics;

use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

pub use bridge::{
    beam_balance, bridge_ant_count, check_stability, even_stations, form_bridge, propose_bridge, BeamBalance, Bridge,
    BridgeProposal, Stability, ANT_LOAD_CAPACITY,
};
pub use colony::{
    forager_step, pheromone_weights, prefer_longer_path, select_bridge, ArchiveEntry, ColonyState, MIN_FORAGER_STD,
};
pub use economics::{benefit_rate_no_bridge, bridge_rate, effective_foragers, REID_ALPHA};

use crate::objective::Incumbent;
use crate::sampling::uniform_vector;
use crate::{Error, Objective, OptResult, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct NoabsParams {
    /// Total ants `N`, also the evaluations spent per iteration.
    pub colony_size: usize,
    /// Pheromone archive size `K`.
    pub archive_size: usize,
    /// Forager/builder coefficient α.
    pub alpha: f64,
    /// Detour length as a multiple of the gap span (κ).
    pub detour_factor: f64,
    /// Fraction of the search-box diagonal covered by one builder.
    pub span_per_ant: f64,
    pub jitter_sigma: f64,
    /// Largest equilibrium residual a standing bridge may show.
    pub collapse_tolerance: f64,
    /// Collapse probability per unit of mean member load.
    pub collapse_scale: f64,
    /// Fraction of the per-ant capacity a member may carry.
    pub capacity_fraction: f64,
    /// Relative rate window within which a longer span is preferred.
    pub tie_epsilon: f64,
    /// Width `q` of the rank weighting of the archive.
    pub pheromone_q: f64,
    pub max_iterations: usize,
}

impl Default for NoabsParams {
    fn default() -> Self {
        Self {
            colony_size: 40,
            archive_size: 10,
            alpha: REID_ALPHA,
            detour_factor: 2.0,
            span_per_ant: 0.1,
            jitter_sigma: 0.02,
            collapse_tolerance: 0.05,
            collapse_scale: 0.2,
            capacity_fraction: 1.0,
            tie_epsilon: 0.02,
            pheromone_q: 0.3,
            max_iterations: 500,
        }
    }
}

impl NoabsParams {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: alloc::string::String| Err(Error::InvalidConfig(msg));
        if self.colony_size < 4 {
            return fail(format!("colony_size must be at least 4, got {}", self.colony_size));
        }
        if self.archive_size < 2 || self.archive_size > self.colony_size {
            return fail(format!("archive_size must lie in [2, colony_size], got {}", self.archive_size));
        }
        if self.max_iterations == 0 {
            return fail("max_iterations must be positive".into());
        }
        let positive = [
            ("alpha", self.alpha),
            ("detour_factor", self.detour_factor),
            ("span_per_ant", self.span_per_ant),
            ("collapse_tolerance", self.collapse_tolerance),
            ("capacity_fraction", self.capacity_fraction),
            ("pheromone_q", self.pheromone_q),
        ];
        for (name, value) in positive {
            if !(value > 0.0) || !value.is_finite() {
                return fail(format!("{name} must be positive, got {value}"));
            }
        }
        let non_negative = [
            ("jitter_sigma", self.jitter_sigma),
            ("collapse_scale", self.collapse_scale),
            ("tie_epsilon", self.tie_epsilon),
        ];
        for (name, value) in non_negative {
            if !(value >= 0.0) || !value.is_finite() {
                return fail(format!("{name} must be non-negative, got {value}"));
            }
        }
        Ok(())
    }
}

/// Minimizes `objective` over `[0, 1]^dimension`.
///
/// Spends `N` evaluations on the initial colony and `N` per iteration.
pub fn optimize<O, R>(objective: &O, dimension: usize, params: &NoabsParams, rng: &mut R) -> Result<OptResult>
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    params.validate()?;
    if dimension == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let colony_size = params.colony_size;
    let mut incumbent = Incumbent::new(dimension, params.max_iterations);
    let mut colony = ColonyState::new(params);

    let initial: Vec<Vec<f64>> = (0..colony_size).map(|_| uniform_vector(rng, dimension)).collect();
    let fitness = incumbent.evaluate(objective, &initial);
    colony.merge(initial, &fitness);

    for _ in 0..params.max_iterations {
        let mut budget = colony_size;
        if let Some(proposal) = select_bridge(&colony, params)? {
            if proposal.accepted {
                let anchor_a = colony.archive()[proposal.anchor_a].vector.clone();
                let anchor_b = colony.archive()[proposal.anchor_b].vector.clone();
                let mut bridge = form_bridge(&proposal, &anchor_a, &anchor_b, params, rng)?;
                let member_fitness = evaluate_counted(&mut incumbent, objective, &bridge.members);
                budget -= bridge.len();
                bridge.assign_loads(&member_fitness)?;
                let stability = check_stability(&bridge, params, rng)?;
                if stability.stands {
                    for (member, &f) in bridge.members.iter().zip(&member_fitness) {
                        incumbent.offer(member, f);
                    }
                    colony.merge(bridge.members, &member_fitness);
                } else {
                    let replacements: Vec<Vec<f64>> =
                        (0..bridge.len()).map(|_| uniform_vector(rng, dimension)).collect();
                    budget -= replacements.len();
                    let fitness = incumbent.evaluate(objective, &replacements);
                    colony.merge(replacements, &fitness);
                }
            }
        }
        let foragers = forager_step(&colony, budget, rng);
        let fitness = incumbent.evaluate(objective, &foragers);
        colony.merge(foragers, &fitness);
        colony.advance();
        incumbent.record();
    }
    Ok(incumbent.finish())
}

/// Evaluates a batch without offering it to the incumbent: the members of a
/// bridge that later collapses never reach the colony.
fn evaluate_counted<O: Objective + ?Sized>(incumbent: &mut Incumbent, objective: &O, batch: &[Vec<f64>]) -> Vec<f64> {
    let mut fitness = Vec::with_capacity(batch.len());
    objective.evaluate_batch(batch, &mut fitness);
    incumbent.evaluations += batch.len();
    fitness
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn defaults_are_valid() {
        NoabsParams::default().validate().unwrap();
        assert_eq!(NoabsParams::default().alpha, 17.02);
    }

    #[test]
    fn invalid_params_are_rejected() {
        let bad = [
            NoabsParams { colony_size: 3, archive_size: 2, ..NoabsParams::default() },
            NoabsParams { archive_size: 1, ..NoabsParams::default() },
            NoabsParams { archive_size: 41, ..NoabsParams::default() },
            NoabsParams { alpha: 0.0, ..NoabsParams::default() },
            NoabsParams { detour_factor: -1.0, ..NoabsParams::default() },
            NoabsParams { max_iterations: 0, ..NoabsParams::default() },
            NoabsParams { jitter_sigma: f64::NAN, ..NoabsParams::default() },
        ];
        for params in bad {
            assert!(matches!(params.validate(), Err(Error::InvalidConfig(_))), "{params:?}");
        }
    }

    #[test]
    fn budget_and_history_contract() {
        let params = NoabsParams { max_iterations: 25, ..NoabsParams::default() };
        let sphere = |x: &[f64]| x.iter().map(|v| (v - 0.4) * (v - 0.4)).sum::<f64>();
        let result = optimize(&sphere, 5, &params, &mut ChaCha8Rng::seed_from_u64(2)).unwrap();
        assert_eq!(result.history.len(), 25);
        assert_eq!(result.evaluation_count, 40 * 26);
        assert_eq!(result.best_fitness, *result.history.last().unwrap());
        assert!(result.history.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(sphere(&result.best_vector), result.best_fitness);
    }
}
