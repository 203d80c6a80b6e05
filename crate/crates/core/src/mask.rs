//! Desired-pattern masks and the one-sided violation integral.
//!
//! The fitness of a pattern is
//!
//! ```text
//! ∫₀¹⁸⁰ max(0, af_db(θ) − afd_db(θ)) dθ      (θ in degrees)
//! ```
//!
//! which is the `[1 + sgn(·)]/2`-weighted integral written with a positive
//! part. It is evaluated with the trapezoid rule on the pattern grid.

use alloc::format;
use alloc::vec::Vec;

use crate::array::{normalized_db, AngleGrid, ArrayGeometry, RadiationPattern};
use crate::{Error, Objective, Result};

/// Default main-beam sector, degrees.
pub const DEFAULT_MAIN_SECTOR: (f64, f64) = (83.0, 97.0);
/// Default side-lobe ceiling, dB.
pub const DEFAULT_SLL_CEILING_DB: f64 = -20.0;
/// Fitness assigned to an all-zero amplitude vector, dB·degrees.
pub const ZERO_EXCITATION_FITNESS: f64 = 1e9;

const SECTOR_EPS: f64 = 1e-9;

/// A required null: every grid point within `half_width_deg` of
/// `center_deg` must stay below `depth_db`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullSector {
    pub center_deg: f64,
    pub half_width_deg: f64,
    pub depth_db: f64,
}

impl NullSector {
    pub fn new(center_deg: f64, half_width_deg: f64, depth_db: f64) -> Self {
        Self { center_deg, half_width_deg, depth_db }
    }

    fn contains(&self, theta: f64) -> bool {
        libm::fabs(theta - self.center_deg) <= self.half_width_deg + SECTOR_EPS
    }
}

/// Desired upper envelope `AFd(θ)` in normalized dB.
#[derive(Debug, Clone, PartialEq)]
pub struct PatternMask {
    grid: AngleGrid,
    afd_db: Vec<f64>,
    main_sector: (f64, f64),
    sll_ceiling_db: f64,
    null_sectors: Vec<NullSector>,
}

impl PatternMask {
    pub fn grid(&self) -> &AngleGrid {
        &self.grid
    }

    pub fn afd_db(&self) -> &[f64] {
        &self.afd_db
    }

    pub fn main_sector(&self) -> (f64, f64) {
        self.main_sector
    }

    pub fn sll_ceiling_db(&self) -> f64 {
        self.sll_ceiling_db
    }

    pub fn null_sectors(&self) -> &[NullSector] {
        &self.null_sectors
    }

    /// Ceiling at the grid point nearest to `angle_deg`.
    pub fn ceiling_at(&self, angle_deg: f64) -> Result<f64> {
        Ok(self.afd_db[self.grid.nearest_index(angle_deg)?])
    }
}

/// Builds a mask that is 0 dB on `main_sector` and `sll_ceiling_db`
/// elsewhere, lowered to each null sector's depth where sectors apply.
pub fn build_mask(
    grid: AngleGrid,
    main_sector: (f64, f64),
    sll_ceiling_db: f64,
    null_sectors: &[NullSector],
) -> Result<PatternMask> {
    let (main_low, main_high) = main_sector;
    if !(0.0..=180.0).contains(&main_low) || !(0.0..=180.0).contains(&main_high) {
        return Err(Error::InvalidConfig(format!(
            "main sector [{main_low}, {main_high}] must lie within [0, 180] degrees"
        )));
    }
    if !(main_low < main_high) {
        return Err(Error::InvalidConfig(format!("main sector [{main_low}, {main_high}] is empty")));
    }
    if !(sll_ceiling_db <= 0.0) {
        return Err(Error::InvalidConfig(format!("side-lobe ceiling {sll_ceiling_db} dB must be <= 0")));
    }
    for sector in null_sectors {
        if !(sector.depth_db <= 0.0) {
            return Err(Error::InvalidConfig(format!("null depth {} dB must be <= 0", sector.depth_db)));
        }
        if !(sector.half_width_deg >= 0.0) || !(0.0..=180.0).contains(&sector.center_deg) {
            return Err(Error::InvalidConfig(format!(
                "null sector at {} degrees (half-width {}) is malformed",
                sector.center_deg, sector.half_width_deg
            )));
        }
        let low = sector.center_deg - sector.half_width_deg;
        let high = sector.center_deg + sector.half_width_deg;
        if low <= main_high && high >= main_low {
            return Err(Error::InvalidConfig(format!(
                "null sector [{low}, {high}] overlaps the main sector [{main_low}, {main_high}]"
            )));
        }
    }

    let in_main = |theta: f64| theta >= main_low - SECTOR_EPS && theta <= main_high + SECTOR_EPS;
    let afd_db: Vec<f64> = grid
        .thetas()
        .map(|theta| {
            if in_main(theta) {
                0.0
            } else {
                null_sectors
                    .iter()
                    .filter(|s| s.contains(theta))
                    .fold(sll_ceiling_db, |ceiling, s| ceiling.min(s.depth_db))
            }
        })
        .collect();
    if !grid.thetas().any(in_main) {
        return Err(Error::InvalidConfig(format!("main sector [{main_low}, {main_high}] contains no grid point")));
    }
    Ok(PatternMask { grid, afd_db, main_sector, sll_ceiling_db, null_sectors: null_sectors.to_vec() })
}

/// Trapezoid-rule integral of `max(0, level − ceiling)` over the grid.
fn violation_integral(levels: impl Iterator<Item = f64>, mask: &PatternMask) -> f64 {
    let last = mask.afd_db.len() - 1;
    let sum = levels.zip(&mask.afd_db).enumerate().fold(0.0, |acc, (i, (level, ceiling))| {
        let excess = (level - ceiling).max(0.0);
        if i == 0 || i == last {
            acc + 0.5 * excess
        } else {
            acc + excess
        }
    });
    sum * mask.grid.step_deg()
}

/// Violation integral of raw dB levels sampled on the mask grid. Unlike
/// [`fitness`] the levels need not be peak-normalized.
pub fn fitness_of_levels(af_db: &[f64], mask: &PatternMask) -> Result<f64> {
    if af_db.len() != mask.afd_db.len() {
        return Err(Error::InvalidInput(format!("{} levels for a mask of {} points", af_db.len(), mask.afd_db.len())));
    }
    Ok(violation_integral(af_db.iter().copied(), mask))
}

/// One-sided mask violation of `pattern`, dB·degrees.
pub fn fitness(pattern: &RadiationPattern, mask: &PatternMask) -> Result<f64> {
    if pattern.grid() != mask.grid() {
        return Err(Error::InvalidInput(format!(
            "pattern grid ({} points, step {}) differs from mask grid ({} points, step {})",
            pattern.len(),
            pattern.grid().step_deg(),
            mask.afd_db.len(),
            mask.grid.step_deg()
        )));
    }
    Ok(violation_integral(pattern.af_db().iter().copied(), mask))
}

/// Amplitude vector → fitness, with the element responses
/// `cos(β d(n) cos θ)` tabulated once per grid point.
#[derive(Debug, Clone)]
pub struct ArrayObjective {
    num_pairs: usize,
    responses: Vec<f64>,
    mask: PatternMask,
    floor_db: f64,
}

/// Binds geometry and mask into an objective over `[0, 1]^M`.
pub fn make_objective(
    geometry: &ArrayGeometry,
    mask: PatternMask,
    grid_step_deg: f64,
    floor_db: f64,
) -> Result<ArrayObjective> {
    let grid = AngleGrid::new(grid_step_deg)?;
    if grid != mask.grid {
        return Err(Error::InvalidInput("mask grid differs from the objective grid".into()));
    }
    if !(floor_db < 0.0) {
        return Err(Error::InvalidInput(format!("floor must be negative, got {floor_db} dB")));
    }
    let num_pairs = geometry.num_pairs();
    let mut responses = Vec::with_capacity(grid.len() * num_pairs);
    for theta in grid.thetas() {
        let cos_theta = libm::cos(theta.to_radians());
        responses.extend((0..num_pairs).map(|n| libm::cos(geometry.phase_argument(n, cos_theta))));
    }
    Ok(ArrayObjective { num_pairs, responses, mask, floor_db })
}

impl ArrayObjective {
    pub fn dimension(&self) -> usize {
        self.num_pairs
    }

    pub fn mask(&self) -> &PatternMask {
        &self.mask
    }

    pub fn floor_db(&self) -> f64 {
        self.floor_db
    }

    fn magnitudes(&self, amplitudes: &[f64]) -> Vec<f64> {
        self.responses
            .chunks_exact(self.num_pairs)
            .map(|row| {
                let sum: f64 = row.iter().zip(amplitudes).map(|(r, a)| r * a).sum();
                libm::fabs(2.0 * sum)
            })
            .collect()
    }

    /// Zero-phase pattern of `amplitudes` on the objective grid.
    pub fn pattern(&self, amplitudes: &[f64]) -> Result<RadiationPattern> {
        if amplitudes.len() != self.num_pairs {
            return Err(Error::InvalidInput(format!(
                "{} amplitudes for {} element pairs",
                amplitudes.len(),
                self.num_pairs
            )));
        }
        RadiationPattern::from_magnitudes(self.mask.grid, self.magnitudes(amplitudes), self.floor_db)
    }
}

impl Objective for ArrayObjective {
    fn evaluate(&self, amplitudes: &[f64]) -> f64 {
        debug_assert_eq!(amplitudes.len(), self.num_pairs);
        let magnitudes = self.magnitudes(amplitudes);
        let peak = magnitudes.iter().copied().fold(0.0, f64::max);
        if !(peak > 0.0) {
            return ZERO_EXCITATION_FITNESS;
        }
        let levels = magnitudes.iter().map(|&m| normalized_db(m, peak, self.floor_db));
        violation_integral(levels, &self.mask)
    }
}
