use antsynth_core::Objective;
use rayon::prelude::*;

/// Evaluates candidate batches on the rayon thread pool. Results keep batch
/// order, so optimizer output does not depend on the thread count.
#[derive(Debug, Clone, Copy)]
pub struct Parallel<'a, O: ?Sized>(pub &'a O);

impl<O: Objective + Sync + ?Sized> Objective for Parallel<'_, O> {
    fn evaluate(&self, x: &[f64]) -> f64 {
        self.0.evaluate(x)
    }

    fn evaluate_batch(&self, candidates: &[Vec<f64>], out: &mut Vec<f64>) {
        let fitness: Vec<f64> = candidates.par_iter().map(|x| self.0.evaluate(x)).collect();
        out.extend(fitness);
    }
}
