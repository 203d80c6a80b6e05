use alloc::vec::Vec;

/// A fitness function over the unit box `[0, 1]^M`, minimized by every
/// optimizer in this crate.
pub trait Objective {
    fn evaluate(&self, x: &[f64]) -> f64;

    /// Evaluates a fully generated batch, appending one fitness per candidate
    /// to `out` in order. Implementations may evaluate concurrently but must
    /// not reorder results.
    fn evaluate_batch(&self, candidates: &[Vec<f64>], out: &mut Vec<f64>) {
        out.extend(candidates.iter().map(|x| self.evaluate(x)));
    }
}

impl<F> Objective for F
where
    F: Fn(&[f64]) -> f64,
{
    fn evaluate(&self, x: &[f64]) -> f64 {
        self(x)
    }
}

/// Outcome shared by all optimizers.
#[derive(Debug, Clone, PartialEq)]
pub struct OptResult {
    pub best_vector: Vec<f64>,
    pub best_fitness: f64,
    /// Best-so-far fitness after each iteration; non-increasing.
    pub history: Vec<f64>,
    pub evaluation_count: usize,
    /// Seconds. The core has no clock; callers that time a run fill this in.
    pub wall_time: f64,
}

/// Tracks the best candidate seen and counts evaluations.
#[derive(Debug, Clone)]
pub(crate) struct Incumbent {
    pub vector: Vec<f64>,
    pub fitness: f64,
    pub evaluations: usize,
    pub history: Vec<f64>,
}

impl Incumbent {
    pub fn new(dimension: usize, iterations: usize) -> Self {
        Self {
            vector: alloc::vec![0.0; dimension],
            fitness: f64::INFINITY,
            evaluations: 0,
            history: Vec::with_capacity(iterations),
        }
    }

    /// Evaluates `batch` and offers every result to the incumbent.
    pub fn evaluate<O: Objective + ?Sized>(&mut self, objective: &O, batch: &[Vec<f64>]) -> Vec<f64> {
        let mut fitness = Vec::with_capacity(batch.len());
        objective.evaluate_batch(batch, &mut fitness);
        debug_assert_eq!(fitness.len(), batch.len());
        self.evaluations += batch.len();
        for (x, &f) in batch.iter().zip(&fitness) {
            self.offer(x, f);
        }
        fitness
    }

    pub fn offer(&mut self, x: &[f64], fitness: f64) {
        if fitness < self.fitness {
            self.fitness = fitness;
            self.vector.clear();
            self.vector.extend_from_slice(x);
        }
    }

    pub fn record(&mut self) {
        self.history.push(self.fitness);
    }

    pub fn finish(self) -> OptResult {
        OptResult {
            best_vector: self.vector,
            best_fitness: self.fitness,
            history: self.history,
            evaluation_count: self.evaluations,
            wall_time: 0.0,
        }
    }
}
