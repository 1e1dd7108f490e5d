//! Execution strategy for the data-parallel inner loops (quadrature panels,
//! brute-force enumeration, per-index coefficient sweeps).
//!
//! With the `parallel` feature disabled, [`Execution::Parallel`] runs the same
//! code sequentially. Results never depend on the strategy: every map keeps
//! input order and every reduction is done in that order afterwards.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether this strategy actually fans out to a thread pool in this build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }

    /// Maps `f` over `0..n`, preserving index order in the output.
    pub fn map_range<T, F>(self, n: usize, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().map(f).collect();
        }
        (0..n).map(f).collect()
    }

    /// Counts indices in `0..n` satisfying `pred`.
    pub fn count_range<F>(self, n: usize, pred: F) -> usize
    where
        F: Fn(usize) -> bool + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            use rayon::prelude::*;
            return (0..n).into_par_iter().filter(|&i| pred(i)).count();
        }
        (0..n).filter(|&i| pred(i)).count()
    }
}
