//! Bridges between two elite anchors: whether to build one, how its members
//! are placed, and whether it stands.

use alloc::vec::Vec;

use rand::Rng;

use super::economics::{benefit_rate_no_bridge, bridge_rate};
use super::NoabsParams;
use crate::sampling::{clamp_unit, distance, gaussian};
use crate::{Error, Result};

/// Load one ant can hold, in body weights.
pub const ANT_LOAD_CAPACITY: f64 = 100.0;

/// Bridge-or-detour decision for one anchor pair.
///
/// The gap between anchors `a` and `b` has span `D = |a − b|`. Walking
/// around it costs the trail `L_T = D` plus a detour `L_A = κ·D`; a bridge
/// shortens the path to `f = D` at the price of `n_b` builders.
#[derive(Debug, Clone, PartialEq)]
pub struct BridgeProposal {
    pub anchor_a: usize,
    pub anchor_b: usize,
    pub span: f64,
    pub detour_factor: f64,
    pub trail_length: f64,
    pub detour_length: f64,
    pub bridge_ants: usize,
    pub rate_without: f64,
    pub rate_with: f64,
    pub accepted: bool,
}

/// Builders needed to cover `span`: one per `span_per_ant` of the box
/// diagonal, at least one, at most half the colony.
pub fn bridge_ant_count(span: f64, dimension: usize, params: &NoabsParams) -> usize {
    let per_ant = params.span_per_ant * libm::sqrt(dimension as f64);
    let needed = libm::ceil(span / per_ant).max(1.0);
    let cap = params.colony_size / 2;
    if needed >= cap as f64 {
        cap.max(1)
    } else {
        needed as usize
    }
}

/// Prices a bridge between archive members `anchor_a` and `anchor_b`.
pub fn propose_bridge(
    anchor_a: (usize, &[f64]),
    anchor_b: (usize, &[f64]),
    params: &NoabsParams,
) -> Result<BridgeProposal> {
    let (a_index, a) = anchor_a;
    let (b_index, b) = anchor_b;
    if a.len() != b.len() {
        return Err(Error::InvalidInput("anchors differ in dimension".into()));
    }
    let span = distance(a, b);
    if !(span > 0.0) {
        return Err(Error::DegenerateAnchors);
    }
    let bridge_ants = bridge_ant_count(span, a.len(), params);
    price_bridge(a_index, b_index, span, bridge_ants, params)
}

pub(crate) fn price_bridge(
    anchor_a: usize,
    anchor_b: usize,
    span: f64,
    bridge_ants: usize,
    params: &NoabsParams,
) -> Result<BridgeProposal> {
    let trail_length = span;
    let detour_length = params.detour_factor * span;
    let rate_without = benefit_rate_no_bridge(params.colony_size, trail_length, detour_length)?;
    let rate_with = bridge_rate(params.colony_size, bridge_ants, params.alpha, span)?;
    Ok(BridgeProposal {
        anchor_a,
        anchor_b,
        span,
        detour_factor: params.detour_factor,
        trail_length,
        detour_length,
        bridge_ants,
        rate_without,
        rate_with,
        accepted: rate_with > rate_without,
    })
}

/// Chain of candidates strung between two anchors.
#[derive(Debug, Clone, PartialEq)]
pub struct Bridge {
    pub members: Vec<Vec<f64>>,
    /// Fractional position `t_i = i/(n_b + 1)` of each member along the span.
    pub positions: Vec<f64>,
    /// Rank-normalized member fitness in [0, 1]; the worst member carries 1.
    pub loads: Vec<f64>,
    pub capacity: f64,
}

impl Bridge {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Sets member loads from their fitness values: the best member gets
    /// load 0, the worst 1, evenly spaced by rank in between.
    pub fn assign_loads(&mut self, fitness: &[f64]) -> Result<()> {
        if fitness.len() != self.members.len() {
            return Err(Error::InvalidInput("one fitness value per bridge member required".into()));
        }
        let mut order: Vec<usize> = (0..fitness.len()).collect();
        order.sort_by(|&i, &j| fitness[i].total_cmp(&fitness[j]).then(i.cmp(&j)));
        let scale = fitness.len().saturating_sub(1).max(1) as f64;
        self.loads = alloc::vec![0.0; fitness.len()];
        for (rank, &member) in order.iter().enumerate() {
            self.loads[member] = rank as f64 / scale;
        }
        Ok(())
    }
}

/// Lays `n_b` members along the segment `a → b` with Gaussian jitter,
/// clamped into the unit box. Loads start at zero until
/// [`Bridge::assign_loads`] is called.
pub fn form_bridge<R: Rng + ?Sized>(
    proposal: &BridgeProposal,
    a: &[f64],
    b: &[f64],
    params: &NoabsParams,
    rng: &mut R,
) -> Result<Bridge> {
    if !proposal.accepted {
        return Err(Error::ContractViolation("cannot form a rejected bridge"));
    }
    let count = proposal.bridge_ants;
    let positions: Vec<f64> = (1..=count).map(|i| i as f64 / (count + 1) as f64).collect();
    let members = positions
        .iter()
        .map(|&t| {
            a.iter()
                .zip(b)
                .map(|(&x, &y)| {
                    let along = x + t * (y - x);
                    let placed =
                        if params.jitter_sigma > 0.0 { gaussian(rng, along, params.jitter_sigma) } else { along };
                    clamp_unit(placed)
                })
                .collect()
        })
        .collect();
    Ok(Bridge { members, positions, loads: alloc::vec![0.0; count], capacity: ANT_LOAD_CAPACITY })
}

/// Support reactions of a unit-span beam carrying the bridge loads, and the
/// equilibrium residuals left after substituting them.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BeamBalance {
    pub reaction_a: f64,
    pub reaction_b: f64,
    /// ΣF_x: no lateral loads, so always zero.
    pub sum_fx: f64,
    /// |R_A + R_B − Σw|
    pub sum_fy: f64,
    /// |R_B·1 − Σ w_i·x_i|, moments about support A.
    pub sum_moment: f64,
}

/// Lever arms `(x_i, 1 − x_i)` of `count` evenly spaced stations
/// `x_i = i/(count + 1)`, with both arms exact ratios so that mirrored
/// stations swap arms bit for bit.
pub fn even_stations(count: usize) -> Vec<(f64, f64)> {
    let span = (count + 1) as f64;
    (1..=count).map(|i| (i as f64 / span, (count + 1 - i) as f64 / span)).collect()
}

/// Reactions from `ΣM_a = 0` (moment = force × perpendicular arm) and
/// `ΣF_y = 0`: `R_B = Σ w_i x_i`, `R_A = Σ w_i (1 − x_i)`.
///
/// `stations` holds each load's arm from support A and from support B.
pub fn beam_balance(stations: &[(f64, f64)], loads: &[f64]) -> Result<BeamBalance> {
    if stations.is_empty() || stations.len() != loads.len() {
        return Err(Error::InvalidInput("beam needs one station per load".into()));
    }
    let moment_about_a: f64 = stations.iter().zip(loads).map(|((x, _), w)| w * x).sum();
    let reaction_b = moment_about_a;
    // Summed from the far end so mirrored load sets give bit-identical reactions.
    let reaction_a: f64 = stations.iter().zip(loads).rev().map(|((_, arm), w)| w * arm).sum();
    let total: f64 = loads.iter().sum();
    Ok(BeamBalance {
        reaction_a,
        reaction_b,
        sum_fx: 0.0,
        sum_fy: libm::fabs(reaction_a + reaction_b - total),
        sum_moment: libm::fabs(reaction_b * 1.0 - moment_about_a),
    })
}

/// Outcome of the stand-or-fall test.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stability {
    pub stands: bool,
    pub balance: BeamBalance,
    pub collapse_probability: f64,
}

/// A bridge stands when it is in equilibrium within `collapse_tolerance`,
/// no member is loaded past its capacity, and it survives a random draw
/// that fails with probability `mean(load)·collapse_scale`.
pub fn check_stability<R: Rng + ?Sized>(bridge: &Bridge, params: &NoabsParams, rng: &mut R) -> Result<Stability> {
    if bridge.is_empty() {
        return Err(Error::InvalidInput("empty bridge".into()));
    }
    let balance = beam_balance(&even_stations(bridge.len()), &bridge.loads)?;
    let balanced = balance.sum_fx <= params.collapse_tolerance
        && balance.sum_fy <= params.collapse_tolerance
        && balance.sum_moment <= params.collapse_tolerance;
    let within_capacity =
        bridge.loads.iter().all(|&w| w * ANT_LOAD_CAPACITY <= bridge.capacity * params.capacity_fraction);
    let mean_load = bridge.loads.iter().sum::<f64>() / bridge.len() as f64;
    let collapse_probability = (mean_load * params.collapse_scale).clamp(0.0, 1.0);
    let draw: f64 = rng.random();
    Ok(Stability { stands: balanced && within_capacity && draw >= collapse_probability, balance, collapse_probability })
}
