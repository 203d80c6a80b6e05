//! Colony state: the pheromone archive of elite solutions and the foragers
//! sampled from it.

use alloc::vec::Vec;

use rand::Rng;

use super::bridge::{propose_bridge, BridgeProposal};
use super::NoabsParams;
use crate::sampling::{clamp_unit, gaussian};
use crate::Result;

/// Smallest per-coordinate sampling spread.
pub const MIN_FORAGER_STD: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq)]
pub struct ArchiveEntry {
    pub vector: Vec<f64>,
    pub fitness: f64,
}

/// Rank weights `exp(−r/(q·K))`, `r = 0..K`, normalized to sum to one.
pub fn pheromone_weights(archive_size: usize, q: f64) -> Vec<f64> {
    let width = q * archive_size as f64;
    let raw: Vec<f64> = (0..archive_size).map(|rank| libm::exp(-(rank as f64) / width)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

#[derive(Debug, Clone)]
pub struct ColonyState {
    colony_size: usize,
    archive_size: usize,
    archive: Vec<ArchiveEntry>,
    pheromone_weights: Vec<f64>,
    pheromone_q: f64,
    iteration: usize,
}

impl ColonyState {
    pub fn new(params: &NoabsParams) -> Self {
        Self {
            colony_size: params.colony_size,
            archive_size: params.archive_size,
            archive: Vec::with_capacity(params.archive_size),
            pheromone_weights: Vec::new(),
            pheromone_q: params.pheromone_q,
            iteration: 0,
        }
    }

    pub fn colony_size(&self) -> usize {
        self.colony_size
    }

    /// Elite solutions, best first.
    pub fn archive(&self) -> &[ArchiveEntry] {
        &self.archive
    }

    pub fn pheromone_weights(&self) -> &[f64] {
        &self.pheromone_weights
    }

    /// Best solution ever merged; the archive is elitist so this is its head.
    pub fn gbest(&self) -> Option<&ArchiveEntry> {
        self.archive.first()
    }

    pub fn iteration(&self) -> usize {
        self.iteration
    }

    pub(crate) fn advance(&mut self) {
        self.iteration += 1;
    }

    /// Merges evaluated candidates, keeping the `K` best distinct vectors.
    pub fn merge(&mut self, candidates: Vec<Vec<f64>>, fitness: &[f64]) {
        debug_assert_eq!(candidates.len(), fitness.len());
        self.archive
            .extend(candidates.into_iter().zip(fitness).map(|(vector, &fitness)| ArchiveEntry { vector, fitness }));
        // Stable sort: on ties, incumbents stay ahead of newcomers.
        self.archive.sort_by(|a, b| a.fitness.total_cmp(&b.fitness));
        let mut kept: Vec<ArchiveEntry> = Vec::with_capacity(self.archive_size);
        for entry in self.archive.drain(..) {
            if kept.len() == self.archive_size {
                break;
            }
            if !kept.iter().any(|k| k.vector == entry.vector) {
                kept.push(entry);
            }
        }
        self.archive = kept;
        self.pheromone_weights = pheromone_weights(self.archive.len(), self.pheromone_q);
    }

    fn coordinate_spread(&self, coordinate: usize) -> f64 {
        let k = self.archive.len() as f64;
        let mean = self.archive.iter().map(|e| e.vector[coordinate]).sum::<f64>() / k;
        let mad = self.archive.iter().map(|e| libm::fabs(e.vector[coordinate] - mean)).sum::<f64>() / k;
        mad.max(MIN_FORAGER_STD)
    }

    fn pick_member<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let mut draw: f64 = rng.random();
        for (k, &w) in self.pheromone_weights.iter().enumerate() {
            if draw < w {
                return k;
            }
            draw -= w;
        }
        self.pheromone_weights.len() - 1
    }
}

/// Samples `count` foragers. Each coordinate follows the pheromone trail of
/// a rank-weighted archive member: a Gaussian centered on that member's
/// coordinate with the archive's mean absolute deviation as spread.
pub fn forager_step<R: Rng + ?Sized>(colony: &ColonyState, count: usize, rng: &mut R) -> Vec<Vec<f64>> {
    let Some(first) = colony.archive.first() else {
        return Vec::new();
    };
    let dimension = first.vector.len();
    let spreads: Vec<f64> = (0..dimension).map(|i| colony.coordinate_spread(i)).collect();
    (0..count)
        .map(|_| {
            spreads
                .iter()
                .enumerate()
                .map(|(i, &spread)| {
                    let member = colony.pick_member(rng);
                    clamp_unit(gaussian(rng, colony.archive[member].vector[i], spread))
                })
                .collect()
        })
        .collect()
}

/// Index into `proposals` of the preferred bridge. `proposals[0]` is the
/// default pair; any other pair whose rate lies within `tie_epsilon`
/// (relative) of the default's wins when it spans a longer gap.
pub fn prefer_longer_path(proposals: &[BridgeProposal], tie_epsilon: f64) -> usize {
    let Some(default) = proposals.first() else {
        return 0;
    };
    let mut chosen = 0;
    for (i, candidate) in proposals.iter().enumerate().skip(1) {
        let scale = candidate.rate_with.max(default.rate_with);
        let tied = libm::fabs(candidate.rate_with - default.rate_with) <= tie_epsilon * scale;
        if tied && candidate.span > proposals[chosen].span {
            chosen = i;
        }
    }
    chosen
}

/// Prices bridges from the best archive member to every other one and picks
/// one: the two best members by default, or a longer tied span.
pub fn select_bridge(colony: &ColonyState, params: &NoabsParams) -> Result<Option<BridgeProposal>> {
    let archive = &colony.archive;
    if archive.len() < 2 {
        return Ok(None);
    }
    let best = (0, archive[0].vector.as_slice());
    let proposals = archive
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, entry)| propose_bridge(best, (j, &entry.vector), params))
        .collect::<Result<Vec<_>>>()?;
    let chosen = prefer_longer_path(&proposals, params.tie_epsilon);
    Ok(proposals.into_iter().nth(chosen))
}
