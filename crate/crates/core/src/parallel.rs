//! Chunked Monte Carlo driver.
//!
//! Work is cut into fixed-size chunks; chunk `k` of a batch always draws
//! from generator stream `base + k`, and chunk results come back in chunk
//! order. Output therefore depends on the seed and never on the worker
//! count. With the `parallel` feature, chunks run on a rayon pool of
//! `workers` threads; without it, or with one worker, they run in sequence.

use serde::{Deserialize, Serialize};

use crate::sampling::SeededGenerator;

/// Samples per chunk.
pub const CHUNK: usize = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonteCarlo {
    pub seed: u64,
    pub workers: usize,
}

impl MonteCarlo {
    pub fn new(seed: u64, workers: usize) -> Self {
        Self { seed, workers: workers.max(1) }
    }

    pub fn sequential(seed: u64) -> Self {
        Self::new(seed, 1)
    }

    /// Stream base reserved for the `point`-th independent batch of an
    /// experiment, leaving 2^32 chunk streams per batch.
    pub fn batch_stream(point: usize) -> u64 {
        (point as u64) << 32
    }

    /// Runs `job(rng, count)` over chunks covering `total` samples and returns
    /// the chunk results in order.
    pub fn run_chunks<T, F>(&self, stream_base: u64, total: usize, job: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut SeededGenerator, usize) -> T + Sync,
    {
        let chunks = total.div_ceil(CHUNK);
        let task = |k: usize| {
            let count = CHUNK.min(total - k * CHUNK);
            let mut rng = SeededGenerator::new(self.seed, stream_base + k as u64);
            job(&mut rng, count)
        };
        self.dispatch(chunks, task)
    }

    /// Draws `total` samples with `draw` and returns them in stream order.
    pub fn samples<T, F>(&self, stream_base: u64, total: usize, draw: F) -> Vec<T>
    where
        T: Send,
        F: Fn(&mut SeededGenerator) -> T + Sync,
    {
        self.run_chunks(stream_base, total, |rng, count| (0..count).map(|_| draw(rng)).collect::<Vec<T>>()).into_iter().flatten().collect()
    }

    #[cfg(feature = "parallel")]
    fn dispatch<T: Send>(&self, chunks: usize, task: impl Fn(usize) -> T + Sync) -> Vec<T> {
        use rayon::prelude::*;
        if self.workers <= 1 || chunks <= 1 {
            return (0..chunks).map(task).collect();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.workers).build() {
            Ok(pool) => pool.install(|| (0..chunks).into_par_iter().map(&task).collect()),
            Err(_) => (0..chunks).map(task).collect(),
        }
    }

    #[cfg(not(feature = "parallel"))]
    fn dispatch<T: Send>(&self, chunks: usize, task: impl Fn(usize) -> T + Sync) -> Vec<T> {
        (0..chunks).map(task).collect()
    }
}
