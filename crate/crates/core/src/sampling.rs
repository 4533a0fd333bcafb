//! Exhaustive and seeded-sampled tuple scans.
//!
//! Tuples are produced in fixed-size chunks. A sampled chunk draws from
//! its own ChaCha stream keyed by `(seed, chunk index)`, so the tuple at a
//! given index is the same whatever the number of worker threads, and
//! per-chunk results are merged in chunk order.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::report::{ItemReport, Mode, MAX_WITNESSES};

pub const DEFAULT_SEED: u64 = 0x5EED;
const CHUNK: u64 = 1 << 12;

#[derive(Clone, Debug)]
pub struct SamplingPlan {
    pub seed: u64,
    /// Overrides the per-arity default sample counts when set.
    pub samples: Option<u64>,
    /// `caps[arity]`: largest `n^arity` that is enumerated exhaustively.
    pub caps: [u64; 7],
}

impl Default for SamplingPlan {
    fn default() -> Self {
        SamplingPlan {
            seed: DEFAULT_SEED,
            samples: None,
            caps: [
                1,
                1 << 24,
                1024 * 1024,
                81 * 81 * 81,
                81 * 81 * 81,
                81 * 81 * 81,
                81 * 81 * 81,
            ],
        }
    }
}

impl SamplingPlan {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_samples(mut self, samples: u64) -> Self {
        self.samples = Some(samples);
        self
    }

    /// A plan that never enumerates, always sampling `samples` tuples.
    pub fn sampled_only(seed: u64, samples: u64) -> Self {
        SamplingPlan {
            seed,
            samples: Some(samples),
            caps: [0; 7],
        }
    }

    pub fn default_samples(arity: usize) -> u64 {
        if arity <= 3 {
            1_000_000
        } else {
            100_000
        }
    }

    pub fn scan(&self, n: usize, arity: usize) -> Scan {
        let cap = self.caps[arity.min(self.caps.len() - 1)];
        let total = (n as u128).checked_pow(arity as u32).unwrap_or(u128::MAX);
        if total <= cap as u128 {
            Scan {
                n,
                arity,
                mode: Mode::Exhaustive,
                count: total as u64,
                seed: self.seed,
            }
        } else {
            Scan {
                n,
                arity,
                mode: Mode::Sampled,
                count: self.samples.unwrap_or_else(|| Self::default_samples(arity)),
                seed: self.seed,
            }
        }
    }
}

/// A tuple predicate. `None` means the tuple is outside the item's gate and is
/// not counted.
pub type Pred<'a> = dyn Fn(&[usize]) -> Option<bool> + Sync + 'a;

#[derive(Clone, Debug)]
pub struct Scan {
    pub n: usize,
    pub arity: usize,
    pub mode: Mode,
    pub count: u64,
    pub seed: u64,
}

impl Scan {
    pub fn exhaustive(n: usize, arity: usize) -> Scan {
        Scan {
            n,
            arity,
            mode: Mode::Exhaustive,
            count: (n as u64).pow(arity as u32),
            seed: 0,
        }
    }

    pub fn sampled(n: usize, arity: usize, count: u64, seed: u64) -> Scan {
        Scan {
            n,
            arity,
            mode: Mode::Sampled,
            count,
            seed,
        }
    }

    fn fill_chunk(&self, chunk: u64, buf: &mut Vec<usize>) -> u64 {
        let start = chunk * CHUNK;
        let len = CHUNK.min(self.count - start);
        buf.clear();
        match self.mode {
            Mode::Exhaustive => {
                for idx in start..start + len {
                    let base = buf.len();
                    buf.resize(base + self.arity, 0);
                    let mut rest = idx;
                    for slot in (0..self.arity).rev() {
                        buf[base + slot] = (rest % self.n as u64) as usize;
                        rest /= self.n as u64;
                    }
                }
            }
            Mode::Sampled => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(chunk);
                for _ in 0..len * self.arity as u64 {
                    buf.push(rng.gen_range(0..self.n));
                }
            }
        }
        len
    }

    /// Evaluates every predicate on every tuple, one item per predicate.
    pub fn run(&self, names: &[&str], preds: &[&Pred<'_>]) -> Vec<ItemReport> {
        assert_eq!(names.len(), preds.len());
        let chunks = self.count.div_ceil(CHUNK);
        let partial: Vec<Vec<ItemReport>> = (0..chunks)
            .into_par_iter()
            .map_init(Vec::new, |buf, chunk| {
                let mut items: Vec<ItemReport> = names
                    .iter()
                    .map(|n| ItemReport::new(*n, self.mode))
                    .collect();
                let len = self.fill_chunk(chunk, buf);
                for t in 0..len as usize {
                    let tuple = &buf[t * self.arity..(t + 1) * self.arity];
                    for (item, pred) in items.iter_mut().zip(preds) {
                        if let Some(ok) = pred(tuple) {
                            item.record(ok, || tuple.to_vec());
                        }
                    }
                }
                items
            })
            .collect();
        let mut merged: Vec<ItemReport> = names
            .iter()
            .map(|n| ItemReport::new(*n, self.mode))
            .collect();
        for items in partial {
            for (acc, item) in merged.iter_mut().zip(items) {
                acc.checked += item.checked;
                acc.failures += item.failures;
                if item.failures > 0 {
                    acc.status = item.status;
                }
                for w in item.witnesses {
                    if acc.witnesses.len() < MAX_WITNESSES {
                        acc.witnesses.push(w);
                    }
                }
            }
        }
        merged
    }

    pub fn run_one(&self, name: &str, pred: &Pred<'_>) -> ItemReport {
        self.run(&[name], &[pred]).pop().expect("one item")
    }

    /// Collects every tuple in scan order; meant for small scans only.
    pub fn tuples(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::with_capacity(self.count as usize);
        let mut buf = Vec::new();
        for chunk in 0..self.count.div_ceil(CHUNK) {
            let len = self.fill_chunk(chunk, &mut buf);
            for t in 0..len as usize {
                out.push(buf[t * self.arity..(t + 1) * self.arity].to_vec());
            }
        }
        out
    }
}
