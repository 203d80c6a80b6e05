use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::objective::Incumbent;
use crate::sampling::{clamp_unit, uniform_vector};
use crate::{Error, Objective, OptResult, Result};

/// Global-best particle swarm settings (constriction-equivalent defaults).
#[derive(Debug, Clone, PartialEq)]
pub struct PsoParams {
    pub swarm_size: usize,
    pub inertia: f64,
    pub cognitive: f64,
    pub social: f64,
    /// Per-coordinate speed limit, box units.
    pub velocity_clamp: f64,
    pub max_iterations: usize,
}

impl Default for PsoParams {
    fn default() -> Self {
        Self {
            swarm_size: 40,
            inertia: 0.729,
            cognitive: 1.49445,
            social: 1.49445,
            velocity_clamp: 0.2,
            max_iterations: 500,
        }
    }
}

impl PsoParams {
    pub fn validate(&self) -> Result<()> {
        if self.swarm_size < 4 {
            return Err(Error::InvalidConfig(format!("swarm_size must be at least 4, got {}", self.swarm_size)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        for (name, value) in [
            ("inertia", self.inertia),
            ("cognitive", self.cognitive),
            ("social", self.social),
            ("velocity_clamp", self.velocity_clamp),
        ] {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::InvalidConfig(format!("{name} must be non-negative, got {value}")));
            }
        }
        Ok(())
    }
}

/// Mirrors a coordinate that left `[0, 1]` back inside and turns its
/// velocity around.
fn reflect(x: &mut f64, v: &mut f64) {
    if *x < 0.0 {
        *x = -*x;
        *v = -*v;
    } else if *x > 1.0 {
        *x = 2.0 - *x;
        *v = -*v;
    }
    *x = clamp_unit(*x);
}

/// Global-best PSO over `[0, 1]^dimension` with reflecting walls.
pub fn pso_optimize<O, R>(objective: &O, dimension: usize, params: &PsoParams, rng: &mut R) -> Result<OptResult>
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    params.validate()?;
    if dimension == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let vmax = params.velocity_clamp;
    let mut incumbent = Incumbent::new(dimension, params.max_iterations);

    let mut positions: Vec<Vec<f64>> = (0..params.swarm_size).map(|_| uniform_vector(rng, dimension)).collect();
    let mut velocities: Vec<Vec<f64>> = (0..params.swarm_size)
        .map(|_| (0..dimension).map(|_| vmax * (2.0 * rng.random::<f64>() - 1.0)).collect())
        .collect();
    let fitness = incumbent.evaluate(objective, &positions);
    let mut personal_best = positions.clone();
    let mut personal_fitness = fitness;

    for _ in 0..params.max_iterations {
        let global = incumbent.vector.clone();
        for ((x, v), p) in positions.iter_mut().zip(&mut velocities).zip(&personal_best) {
            for d in 0..dimension {
                let r1: f64 = rng.random();
                let r2: f64 = rng.random();
                let pull = params.cognitive * r1 * (p[d] - x[d]) + params.social * r2 * (global[d] - x[d]);
                v[d] = (params.inertia * v[d] + pull).clamp(-vmax, vmax);
                x[d] += v[d];
                reflect(&mut x[d], &mut v[d]);
            }
        }
        let fitness = incumbent.evaluate(objective, &positions);
        for (i, &f) in fitness.iter().enumerate() {
            if f < personal_fitness[i] {
                personal_fitness[i] = f;
                personal_best[i].clone_from(&positions[i]);
            }
        }
        incumbent.record();
    }
    Ok(incumbent.finish())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reflection_stays_in_box() {
        let (mut x, mut v) = (-0.15, -0.2);
        reflect(&mut x, &mut v);
        assert_eq!((x, v), (0.15, 0.2));
        let (mut x, mut v) = (1.1, 0.2);
        reflect(&mut x, &mut v);
        assert!((x - 0.9).abs() < 1e-15 && v == -0.2);
    }

    #[test]
    fn invalid_params_are_rejected() {
        assert!(PsoParams { swarm_size: 2, ..PsoParams::default() }.validate().is_err());
        assert!(PsoParams { inertia: -0.1, ..PsoParams::default() }.validate().is_err());
        assert!(PsoParams { max_iterations: 0, ..PsoParams::default() }.validate().is_err());
        PsoParams::default().validate().unwrap();
    }
}
