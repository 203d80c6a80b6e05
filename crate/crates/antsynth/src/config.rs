//! Experiment configuration files (TOML).
//!
//! ```toml
//! seed = 7
//! iterations = 500
//! num_elements = 20
//! output_dir = "runs/nulls"
//!
//! [mask]
//! main_sector = [83.0, 97.0]
//! sll_ceiling_db = -20.0
//! null_sectors = [
//!     { center_deg = 50.0, half_width_deg = 1.0, depth_db = -60.0 },
//!     { center_deg = 120.0, half_width_deg = 1.0, depth_db = -60.0 },
//! ]
//!
//! [optimizer]
//! name = "noabs"
//!
//! [optimizer.noabs]
//! colony_size = 40
//! ```
//!
//! Only `seed` and `optimizer.name` are required.

use std::fs;
use std::path::{Path, PathBuf};

use antsynth_core::array::{AngleGrid, DEFAULT_FLOOR_DB, DEFAULT_GRID_STEP_DEG, DEFAULT_SPACING};
use antsynth_core::baseline::{GaParams, PsoParams};
use antsynth_core::mask::{NullSector, DEFAULT_MAIN_SECTOR, DEFAULT_SLL_CEILING_DB};
use antsynth_core::noabs::NoabsParams;
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};

pub const OPTIMIZER_NAMES: [&str; 3] = ["noabs", "pso", "ga"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub seed: u64,
    #[serde(default = "default_iterations")]
    pub iterations: usize,
    #[serde(default = "default_num_elements")]
    pub num_elements: usize,
    #[serde(default = "default_spacing")]
    pub spacing_wavelengths: f64,
    #[serde(default = "default_grid_step")]
    pub grid_step_deg: f64,
    #[serde(default = "default_floor")]
    pub floor_db: f64,
    #[serde(default)]
    pub mask: MaskConfig,
    pub optimizer: OptimizerConfig,
    /// Where artifacts go. Not echoed into summaries, so the same experiment
    /// written to two places yields identical files.
    #[serde(default = "default_output_dir", skip_serializing)]
    pub output_dir: PathBuf,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MaskConfig {
    #[serde(default = "default_main_sector")]
    pub main_sector: [f64; 2],
    #[serde(default = "default_sll_ceiling")]
    pub sll_ceiling_db: f64,
    #[serde(default)]
    pub null_sectors: Vec<NullSectorConfig>,
}

impl Default for MaskConfig {
    fn default() -> Self {
        Self { main_sector: default_main_sector(), sll_ceiling_db: default_sll_ceiling(), null_sectors: Vec::new() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NullSectorConfig {
    pub center_deg: f64,
    #[serde(default = "default_null_half_width")]
    pub half_width_deg: f64,
    #[serde(default = "default_null_depth")]
    pub depth_db: f64,
}

impl From<NullSectorConfig> for NullSector {
    fn from(c: NullSectorConfig) -> Self {
        NullSector::new(c.center_deg, c.half_width_deg, c.depth_db)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OptimizerConfig {
    pub name: String,
    #[serde(default)]
    pub noabs: NoabsSection,
    #[serde(default)]
    pub pso: PsoSection,
    #[serde(default)]
    pub ga: GaSection,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NoabsSection {
    pub colony_size: usize,
    pub archive_size: usize,
    pub alpha: f64,
    pub detour_factor: f64,
    pub span_per_ant: f64,
    pub jitter_sigma: f64,
    pub collapse_tolerance: f64,
    pub collapse_scale: f64,
    pub capacity_fraction: f64,
    pub tie_epsilon: f64,
    pub pheromone_q: f64,
}

impl Default for NoabsSection {
    fn default() -> Self {
        let p = NoabsParams::default();
        Self {
            colony_size: p.colony_size,
            archive_size: p.archive_size,
            alpha: p.alpha,
            detour_factor: p.detour_factor,
            span_per_ant: p.span_per_ant,
            jitter_sigma: p.jitter_sigma,
            collapse_tolerance: p.collapse_tolerance,
            collapse_scale: p.collapse_scale,
            capacity_fraction: p.capacity_fraction,
            tie_epsilon: p.tie_epsilon,
            pheromone_q: p.pheromone_q,
        }
    }
}

impl NoabsSection {
    pub fn params(&self, iterations: usize) -> NoabsParams {
        NoabsParams {
            colony_size: self.colony_size,
            archive_size: self.archive_size,
            alpha: self.alpha,
            detour_factor: self.detour_factor,
            span_per_ant: self.span_per_ant,
            jitter_sigma: self.jitter_sigma,
            collapse_tolerance: self.collapse_tolerance,
            collapse_scale: self.collapse_scale,
            capacity_fraction: self.capacity_fraction,
            tie_epsilon: self.tie_epsilon,
            pheromone_q: self.pheromone_q,
            max_iterations: iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PsoSection {
    pub swarm_size: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    pub velocity_clamp: f64,
}

impl Default for PsoSection {
    fn default() -> Self {
        let p = PsoParams::default();
        Self {
            swarm_size: p.swarm_size,
            inertia: p.inertia,
            cognitive: p.cognitive,
            social: p.social,
            velocity_clamp: p.velocity_clamp,
        }
    }
}

impl PsoSection {
    pub fn params(&self, iterations: usize) -> PsoParams {
        PsoParams {
            swarm_size: self.swarm_size,
            inertia: self.inertia,
            cognitive: self.cognitive,
            social: self.social,
            velocity_clamp: self.velocity_clamp,
            max_iterations: iterations,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GaSection {
    pub population_size: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub mutation_sigma: f64,
    pub elitism: usize,
}

impl Default for GaSection {
    fn default() -> Self {
        let p = GaParams::default();
        Self {
            population_size: p.population_size,
            tournament_size: p.tournament_size,
            crossover_rate: p.crossover_rate,
            mutation_rate: p.mutation_rate,
            mutation_sigma: p.mutation_sigma,
            elitism: p.elitism,
        }
    }
}

impl GaSection {
    pub fn params(&self, iterations: usize) -> GaParams {
        GaParams {
            population_size: self.population_size,
            tournament_size: self.tournament_size,
            crossover_rate: self.crossover_rate,
            mutation_rate: self.mutation_rate,
            mutation_sigma: self.mutation_sigma,
            elitism: self.elitism,
            max_iterations: iterations,
        }
    }
}

fn default_iterations() -> usize {
    500
}
fn default_num_elements() -> usize {
    20
}
fn default_spacing() -> f64 {
    DEFAULT_SPACING
}
fn default_grid_step() -> f64 {
    DEFAULT_GRID_STEP_DEG
}
fn default_floor() -> f64 {
    DEFAULT_FLOOR_DB
}
fn default_output_dir() -> PathBuf {
    PathBuf::from("antsynth-out")
}
fn default_main_sector() -> [f64; 2] {
    [DEFAULT_MAIN_SECTOR.0, DEFAULT_MAIN_SECTOR.1]
}
fn default_sll_ceiling() -> f64 {
    DEFAULT_SLL_CEILING_DB
}
fn default_null_half_width() -> f64 {
    1.0
}
fn default_null_depth() -> f64 {
    -60.0
}

/// Checks `name` against the known optimizers.
pub fn check_optimizer_name(name: &str) -> Result<()> {
    if OPTIMIZER_NAMES.contains(&name) {
        Ok(())
    } else {
        Err(HarnessError::invalid(
            "optimizer.name",
            format!("unknown optimizer {name:?}; valid names are {}", OPTIMIZER_NAMES.join(", ")),
        ))
    }
}

impl ExperimentConfig {
    /// Parses and validates a configuration document.
    pub fn from_toml(text: &str, origin: &Path) -> Result<Self> {
        let config: Self = toml::from_str(text).map_err(|e| {
            let line = e.span().map_or(1, |span| text[..span.start.min(text.len())].matches('\n').count() + 1);
            HarnessError::Parse { path: origin.to_path_buf(), line, message: e.message().to_string() }
        })?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_elements < 4 || !self.num_elements.is_multiple_of(2) {
            return Err(HarnessError::invalid(
                "num_elements",
                format!("must be even and at least 4, got {}", self.num_elements),
            ));
        }
        if !(self.spacing_wavelengths > 0.0) || !self.spacing_wavelengths.is_finite() {
            return Err(HarnessError::invalid("spacing_wavelengths", "must be positive"));
        }
        if AngleGrid::new(self.grid_step_deg).is_err() {
            return Err(HarnessError::invalid(
                "grid_step_deg",
                format!("{} does not divide 180 evenly", self.grid_step_deg),
            ));
        }
        if !(self.floor_db < 0.0) {
            return Err(HarnessError::invalid("floor_db", "must be negative"));
        }
        if self.iterations == 0 {
            return Err(HarnessError::invalid("iterations", "must be positive"));
        }
        check_optimizer_name(&self.optimizer.name)?;
        let section = |key: &str, result: antsynth_core::Result<()>| {
            result.map_err(|e| HarnessError::invalid(key, e.to_string()))
        };
        section("optimizer.noabs", self.optimizer.noabs.params(self.iterations).validate())?;
        section("optimizer.pso", self.optimizer.pso.params(self.iterations).validate())?;
        section("optimizer.ga", self.optimizer.ga.params(self.iterations).validate())?;
        crate::experiment::build_mask(self).map(|_| ())
    }

    pub fn num_pairs(&self) -> usize {
        self.num_elements / 2
    }

    /// Individuals per iteration of optimizer `name`.
    pub fn population_of(&self, name: &str) -> usize {
        match name {
            "pso" => self.optimizer.pso.swarm_size,
            "ga" => self.optimizer.ga.population_size,
            _ => self.optimizer.noabs.colony_size,
        }
    }
}

/// Reads and validates the configuration file at `path`.
pub fn load_config(path: &Path) -> Result<ExperimentConfig> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Read { path: path.to_path_buf(), source })?;
    ExperimentConfig::from_toml(&text, path)
}
