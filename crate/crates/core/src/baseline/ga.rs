use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use crate::objective::Incumbent;
use crate::sampling::{clamp_unit, gaussian, uniform_vector};
use crate::{Error, Objective, OptResult, Result};

/// Real-coded genetic algorithm settings.
#[derive(Debug, Clone, PartialEq)]
pub struct GaParams {
    pub population_size: usize,
    pub tournament_size: usize,
    pub crossover_rate: f64,
    /// Per-gene mutation probability.
    pub mutation_rate: f64,
    pub mutation_sigma: f64,
    pub elitism: usize,
    pub max_iterations: usize,
}

impl Default for GaParams {
    fn default() -> Self {
        Self {
            population_size: 40,
            tournament_size: 2,
            crossover_rate: 0.9,
            mutation_rate: 0.1,
            mutation_sigma: 0.05,
            elitism: 1,
            max_iterations: 500,
        }
    }
}

impl GaParams {
    pub fn validate(&self) -> Result<()> {
        if self.population_size < 4 {
            return Err(Error::InvalidConfig(format!(
                "population_size must be at least 4, got {}",
                self.population_size
            )));
        }
        if self.tournament_size == 0 || self.tournament_size > self.population_size {
            return Err(Error::InvalidConfig(format!(
                "tournament_size must lie in [1, population_size], got {}",
                self.tournament_size
            )));
        }
        if self.elitism >= self.population_size {
            return Err(Error::InvalidConfig(format!("elitism must be below population_size, got {}", self.elitism)));
        }
        if self.max_iterations == 0 {
            return Err(Error::InvalidConfig("max_iterations must be positive".into()));
        }
        for (name, rate) in [("crossover_rate", self.crossover_rate), ("mutation_rate", self.mutation_rate)] {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidConfig(format!("{name} must lie in [0, 1], got {rate}")));
            }
        }
        if !(self.mutation_sigma >= 0.0) || !self.mutation_sigma.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "mutation_sigma must be non-negative, got {}",
                self.mutation_sigma
            )));
        }
        Ok(())
    }
}

fn tournament<R: Rng + ?Sized>(fitness: &[f64], size: usize, rng: &mut R) -> usize {
    let mut winner = rng.random_range(0..fitness.len());
    for _ in 1..size {
        let challenger = rng.random_range(0..fitness.len());
        if fitness[challenger] < fitness[winner] {
            winner = challenger;
        }
    }
    winner
}

/// Generational GA: tournament selection, arithmetic crossover, Gaussian
/// mutation and elitist replacement, all inside `[0, 1]^dimension`.
///
/// Each generation breeds and evaluates a full population; the `elitism`
/// best parents survive alongside the best offspring.
pub fn ga_optimize<O, R>(objective: &O, dimension: usize, params: &GaParams, rng: &mut R) -> Result<OptResult>
where
    O: Objective + ?Sized,
    R: Rng + ?Sized,
{
    params.validate()?;
    if dimension == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let size = params.population_size;
    let mut incumbent = Incumbent::new(dimension, params.max_iterations);
    let mut population: Vec<Vec<f64>> = (0..size).map(|_| uniform_vector(rng, dimension)).collect();
    let mut fitness = incumbent.evaluate(objective, &population);

    for _ in 0..params.max_iterations {
        let mut ranked: Vec<usize> = (0..size).collect();
        ranked.sort_by(|&i, &j| fitness[i].total_cmp(&fitness[j]).then(i.cmp(&j)));

        let offspring: Vec<Vec<f64>> = (0..size)
            .map(|_| {
                let first = tournament(&fitness, params.tournament_size, rng);
                let second = tournament(&fitness, params.tournament_size, rng);
                let mut child = if rng.random::<f64>() < params.crossover_rate {
                    let weight: f64 = rng.random();
                    population[first]
                        .iter()
                        .zip(&population[second])
                        .map(|(a, b)| weight * a + (1.0 - weight) * b)
                        .collect()
                } else {
                    population[first].clone()
                };
                for gene in child.iter_mut() {
                    if rng.random::<f64>() < params.mutation_rate {
                        *gene = clamp_unit(gaussian(rng, *gene, params.mutation_sigma));
                    }
                }
                child
            })
            .collect();
        let offspring_fitness = incumbent.evaluate(objective, &offspring);

        let mut next_population = Vec::with_capacity(size);
        let mut next_fitness = Vec::with_capacity(size);
        for &elite in &ranked[..params.elitism] {
            next_population.push(population[elite].clone());
            next_fitness.push(fitness[elite]);
        }
        let mut survivors: Vec<usize> = (0..size).collect();
        survivors.sort_by(|&i, &j| offspring_fitness[i].total_cmp(&offspring_fitness[j]).then(i.cmp(&j)));
        for &child in &survivors[..size - params.elitism] {
            next_population.push(offspring[child].clone());
            next_fitness.push(offspring_fitness[child]);
        }
        population = next_population;
        fitness = next_fitness;
        incumbent.record();
    }
    Ok(incumbent.finish())
}
