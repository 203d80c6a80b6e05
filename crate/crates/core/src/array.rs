//! Array factor of a symmetric linear array and metrics of its sampled pattern.
//!
//! A 2M-element array is described by the M element positions on one side of
//! the array center. Element pairs share their excitation, so the array factor
//! reduces to a sum of cosines:
//!
//! ```text
//! AF(θ) = 2 Σ_{n=1..M} a(n) e^{jφ(n)} cos(β d(n) cos θ)
//! ```

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;

use crate::{Error, Result};

/// Default sampling step of the θ grid, degrees.
pub const DEFAULT_GRID_STEP_DEG: f64 = 0.25;
/// Default clamp of normalized patterns, dB.
pub const DEFAULT_FLOOR_DB: f64 = -120.0;
/// Default element spacing, wavelengths.
pub const DEFAULT_SPACING: f64 = 0.5;

const GRID_TOLERANCE: f64 = 1e-9;

/// Element layout of one half of a symmetric linear array.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayGeometry {
    positions: Vec<f64>,
    wave_number: f64,
}

impl ArrayGeometry {
    /// `positions` are distances from the array center (wavelengths when
    /// `wave_number` is 2π).
    pub fn new(positions: Vec<f64>, wave_number: f64) -> Result<Self> {
        if positions.is_empty() {
            return Err(Error::InvalidInput("geometry needs at least one element pair".into()));
        }
        if !(wave_number > 0.0) || !wave_number.is_finite() {
            return Err(Error::InvalidInput(format!("wave number must be positive, got {wave_number}")));
        }
        if positions.iter().any(|d| !(*d > 0.0) || !d.is_finite()) {
            return Err(Error::InvalidInput("element positions must be positive".into()));
        }
        if positions.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("element positions must be strictly increasing".into()));
        }
        Ok(Self { positions, wave_number })
    }

    /// Evenly spaced layout `d(n) = (2n − 1)·spacing/2`, positions in wavelengths.
    pub fn uniform(num_pairs: usize, spacing: f64) -> Result<Self> {
        if !(spacing > 0.0) {
            return Err(Error::InvalidInput(format!("spacing must be positive, got {spacing}")));
        }
        let positions = (1..=num_pairs).map(|n| (2 * n - 1) as f64 * spacing / 2.0).collect();
        Self::new(positions, 2.0 * PI)
    }

    pub fn num_pairs(&self) -> usize {
        self.positions.len()
    }

    pub fn num_elements(&self) -> usize {
        2 * self.positions.len()
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn wave_number(&self) -> f64 {
        self.wave_number
    }

    /// Electrical phase argument `β·d(n)·cos θ` of pair `n` at `theta_deg`.
    #[inline]
    pub(crate) fn phase_argument(&self, n: usize, cos_theta: f64) -> f64 {
        self.wave_number * self.positions[n] * cos_theta
    }
}

/// Feed coefficients of the M element pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct Excitation {
    amplitudes: Vec<f64>,
    phases: Vec<f64>,
}

impl Excitation {
    pub fn new(amplitudes: Vec<f64>, phases: Vec<f64>) -> Result<Self> {
        if amplitudes.len() != phases.len() {
            return Err(Error::InvalidInput(format!("{} amplitudes but {} phases", amplitudes.len(), phases.len())));
        }
        if let Some(a) = amplitudes.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::InvalidInput(format!("amplitude {a} outside [0, 1]")));
        }
        if phases.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidInput("phases must be finite".into()));
        }
        Ok(Self { amplitudes, phases })
    }

    /// Amplitude-only excitation with all phases zero.
    pub fn from_amplitudes(amplitudes: Vec<f64>) -> Result<Self> {
        let phases = vec![0.0; amplitudes.len()];
        Self::new(amplitudes, phases)
    }

    pub fn uniform(num_pairs: usize) -> Self {
        Self { amplitudes: vec![1.0; num_pairs], phases: vec![0.0; num_pairs] }
    }

    pub fn amplitudes(&self) -> &[f64] {
        &self.amplitudes
    }

    pub fn phases(&self) -> &[f64] {
        &self.phases
    }

    fn check_against(&self, geometry: &ArrayGeometry) -> Result<()> {
        if self.amplitudes.len() != geometry.num_pairs() {
            return Err(Error::InvalidInput(format!(
                "excitation has {} pairs, geometry has {}",
                self.amplitudes.len(),
                geometry.num_pairs()
            )));
        }
        Ok(())
    }
}

/// Complex array factor at `theta_deg` (degrees from the array axis).
pub fn array_factor(geometry: &ArrayGeometry, excitation: &Excitation, theta_deg: f64) -> Result<Complex64> {
    excitation.check_against(geometry)?;
    if !(0.0..=180.0).contains(&theta_deg) {
        return Err(Error::InvalidInput(format!("theta {theta_deg} outside [0, 180] degrees")));
    }
    let cos_theta = libm::cos(theta_deg.to_radians());
    let sum = excitation.amplitudes.iter().zip(&excitation.phases).enumerate().fold(
        Complex64::new(0.0, 0.0),
        |acc, (n, (&a, &phi))| {
            let term = libm::cos(geometry.phase_argument(n, cos_theta));
            acc + Complex64::from_polar(a, phi) * term
        },
    );
    Ok(sum * 2.0)
}

/// Uniform sampling of θ over [0°, 180°].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AngleGrid {
    step_deg: f64,
    intervals: usize,
}

impl AngleGrid {
    pub fn new(step_deg: f64) -> Result<Self> {
        if !(step_deg > 0.0) || step_deg > 180.0 {
            return Err(Error::InvalidInput(format!("grid step {step_deg} must lie in (0, 180]")));
        }
        let ratio = 180.0 / step_deg;
        let intervals = libm::round(ratio);
        if libm::fabs(ratio - intervals) > GRID_TOLERANCE * ratio.max(1.0) {
            return Err(Error::InvalidInput(format!("grid step {step_deg} does not divide 180 evenly")));
        }
        Ok(Self { step_deg, intervals: intervals as usize })
    }

    pub fn step_deg(&self) -> f64 {
        self.step_deg
    }

    /// Number of samples, `180/step + 1`.
    pub fn len(&self) -> usize {
        self.intervals + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn theta(&self, index: usize) -> f64 {
        index as f64 * self.step_deg
    }

    pub fn thetas(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.len()).map(move |i| self.theta(i))
    }

    /// Index of the grid point nearest to `angle_deg`.
    pub fn nearest_index(&self, angle_deg: f64) -> Result<usize> {
        if !(0.0..=180.0).contains(&angle_deg) {
            return Err(Error::InvalidInput(format!("angle {angle_deg} outside [0, 180] degrees")));
        }
        Ok((libm::round(angle_deg / self.step_deg) as usize).min(self.intervals))
    }
}

/// Sampled |AF(θ)| with its peak-normalized dB view.
#[derive(Debug, Clone, PartialEq)]
pub struct RadiationPattern {
    grid: AngleGrid,
    theta_deg: Vec<f64>,
    af_linear: Vec<f64>,
    af_db: Vec<f64>,
    peak_index: usize,
    floor_db: f64,
}

impl RadiationPattern {
    /// Builds the pattern from sampled magnitudes (one per grid point).
    pub fn from_magnitudes(grid: AngleGrid, af_linear: Vec<f64>, floor_db: f64) -> Result<Self> {
        if !(floor_db < 0.0) {
            return Err(Error::InvalidInput(format!("floor must be negative, got {floor_db} dB")));
        }
        if af_linear.len() != grid.len() {
            return Err(Error::InvalidInput(format!("{} samples for a {}-point grid", af_linear.len(), grid.len())));
        }
        let (peak_index, peak) =
            af_linear
                .iter()
                .copied()
                .enumerate()
                .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
        if !(peak > 0.0) || !peak.is_finite() {
            return Err(Error::ZeroExcitation);
        }
        let af_db = af_linear.iter().map(|&v| normalized_db(v, peak, floor_db)).collect();
        Ok(Self { grid, theta_deg: grid.thetas().collect(), af_linear, af_db, peak_index, floor_db })
    }

    pub fn grid(&self) -> &AngleGrid {
        &self.grid
    }

    pub fn theta_deg(&self) -> &[f64] {
        &self.theta_deg
    }

    pub fn af_linear(&self) -> &[f64] {
        &self.af_linear
    }

    pub fn af_db(&self) -> &[f64] {
        &self.af_db
    }

    pub fn peak_index(&self) -> usize {
        self.peak_index
    }

    pub fn floor_db(&self) -> f64 {
        self.floor_db
    }

    pub fn len(&self) -> usize {
        self.af_db.len()
    }

    pub fn is_empty(&self) -> bool {
        self.af_db.is_empty()
    }

    /// Grid indices of the main-lobe edges: the first local minima on either
    /// side of the peak, or the grid ends when none exists.
    pub fn main_lobe_indices(&self) -> (usize, usize) {
        let db = &self.af_db;
        let mut low = self.peak_index;
        while low > 0 && db[low - 1] < db[low] {
            low -= 1;
        }
        let mut high = self.peak_index;
        while high + 1 < db.len() && db[high + 1] < db[high] {
            high += 1;
        }
        (low, high)
    }
}

#[inline]
pub(crate) fn normalized_db(value: f64, peak: f64, floor_db: f64) -> f64 {
    let ratio = value / peak;
    if ratio <= 0.0 {
        return floor_db;
    }
    (20.0 * libm::log10(ratio)).clamp(floor_db, 0.0)
}

/// Samples |AF| over `[0°, 180°]` with step `grid_step_deg`.
pub fn compute_pattern(
    geometry: &ArrayGeometry,
    excitation: &Excitation,
    grid_step_deg: f64,
    floor_db: f64,
) -> Result<RadiationPattern> {
    let grid = AngleGrid::new(grid_step_deg)?;
    excitation.check_against(geometry)?;
    if excitation.amplitudes.iter().all(|&a| a == 0.0) {
        return Err(Error::ZeroExcitation);
    }
    let magnitudes = grid
        .thetas()
        .map(|theta| array_factor(geometry, excitation, theta).map(|af| af.norm()))
        .collect::<Result<Vec<_>>>()?;
    RadiationPattern::from_magnitudes(grid, magnitudes, floor_db)
}

/// Main-lobe edges in degrees.
pub fn main_lobe_bounds(pattern: &RadiationPattern) -> (f64, f64) {
    let (low, high) = pattern.main_lobe_indices();
    (pattern.grid.theta(low), pattern.grid.theta(high))
}

/// Highest strict local maximum of the dB pattern outside the main lobe.
pub fn side_lobe_level(pattern: &RadiationPattern) -> Result<f64> {
    let (low, high) = pattern.main_lobe_indices();
    let db = &pattern.af_db;
    (1..db.len().saturating_sub(1))
        .filter(|&i| i < low || i > high)
        .filter(|&i| db[i] > db[i - 1] && db[i] > db[i + 1])
        .map(|i| db[i])
        .fold(None, |best: Option<f64>, v| Some(best.map_or(v, |b| b.max(v))))
        .ok_or(Error::NoSideLobes)
}

/// Normalized level at the grid point nearest to `angle_deg`.
pub fn null_depth(pattern: &RadiationPattern, angle_deg: f64) -> Result<f64> {
    let index = pattern.grid.nearest_index(angle_deg)?;
    Ok(pattern.af_db[index])
}
