//! Sample scheduling.
//!
//! Every sampled check draws sample `i` from its own ChaCha stream keyed by
//! `(seed, i)`, so results are identical whether samples run on one thread or
//! on the rayon pool. Output order always follows the sample index.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Execution {
    Sequential,
    /// Falls back to sequential when the `parallel` feature is disabled.
    Parallel,
}

impl Default for Execution {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Execution::Parallel
        } else {
            Execution::Sequential
        }
    }
}

/// Sample budget, seed and scheduling for a sampled check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sampling {
    pub count: usize,
    pub seed: u64,
    pub execution: Execution,
}

impl Sampling {
    pub fn new(count: usize, seed: u64) -> Self {
        Sampling {
            count,
            seed,
            execution: Execution::default(),
        }
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn rng(&self, index: usize) -> ChaCha8Rng {
        sample_rng(self.seed, index as u64)
    }

    pub fn map<R, F>(&self, f: F) -> Vec<R>
    where
        R: Send,
        F: Fn(usize) -> R + Sync + Send,
    {
        map_indexed(self.execution, self.count, f)
    }
}

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn map_indexed<R, F>(execution: Execution, count: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            (0..count).into_par_iter().map(f).collect()
        }
        _ => (0..count).map(f).collect(),
    }
}
