//! Monte Carlo estimate bookkeeping and deterministic parallel sharding.

use rayon::prelude::*;

/// Point estimate with its standard error and provenance.
#[derive(Clone, Copy, Debug)]
pub struct EstimateResult {
    pub estimate: f64,
    pub std_error: f64,
    pub n_samples: u64,
    pub seed: u64,
}

/// Running sum / sum-of-squares accumulator.
#[derive(Clone, Copy, Debug, Default)]
pub struct Accumulator {
    pub sum: f64,
    pub sum_sq: f64,
    pub n: u64,
}

impl Accumulator {
    pub fn push(&mut self, x: f64) {
        self.sum += x;
        self.sum_sq += x * x;
        self.n += 1;
    }

    pub fn merge(&mut self, other: &Accumulator) {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        self.n += other.n;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.n as f64
    }

    /// Standard error of the mean (sample std / sqrt(n)).
    pub fn std_error(&self) -> f64 {
        if self.n < 2 {
            return f64::NAN;
        }
        let n = self.n as f64;
        let var = ((self.sum_sq - self.sum * self.sum / n) / (n - 1.0)).max(0.0);
        (var / n).sqrt()
    }

    pub fn result(&self, seed: u64) -> EstimateResult {
        EstimateResult {
            estimate: self.mean(),
            std_error: self.std_error(),
            n_samples: self.n,
            seed,
        }
    }
}

/// Samples handled by one RNG stream; keeps per-stream work large enough to
/// amortize RNG setup while bounding the stream count.
pub const SHARD_SIZE: u64 = 1 << 14;

/// Split `n` samples into shards, run `work(shard_index, shard_len)` in
/// parallel, and merge the per-shard outputs *in shard order*, so the result
/// is bit-identical for every thread count.
pub fn run_sharded<T, F>(n: u64, work: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync,
{
    let shards = n.div_ceil(SHARD_SIZE);
    (0..shards)
        .into_par_iter()
        .map(|s| {
            let len = SHARD_SIZE.min(n - s * SHARD_SIZE);
            work(s, len)
        })
        .collect()
}
