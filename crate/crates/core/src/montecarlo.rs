//! Uniform permutation sampling.
//!
//! Generator: xoshiro256++ seeded with `seed_from_u64(seed)` (SplitMix64
//! expansion). Trials are cut into chunks of [`CHUNK_TRIALS`]; chunk `c`
//! uses the base generator advanced by `c` calls to `jump()` (2^128 steps
//! each), so streams never overlap. Counts and sums are exact integers, so
//! the result does not depend on how chunks are spread over threads.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Statistic};

pub const CHUNK_TRIALS: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleStats {
    pub statistic: Statistic,
    pub n: usize,
    pub trials: u64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Number of trials with value `≥ threshold`.
    pub tail_hits: BTreeMap<i64, u64>,
    pub seed: u64,
}

impl SampleStats {
    /// Empirical `P(X ≥ threshold)` and its binomial standard error.
    pub fn tail_frequency(&self, threshold: i64) -> Option<(f64, f64)> {
        let hits = *self.tail_hits.get(&threshold)?;
        let p = hits as f64 / self.trials as f64;
        Some((p, (p * (1.0 - p) / self.trials as f64).sqrt()))
    }
}

/// Fisher–Yates shuffle. `gen_range` draws bounded integers without modulo
/// bias (widening multiply with rejection).
pub fn shuffle<R: Rng + ?Sized>(rng: &mut R, perm: &mut [usize]) {
    for i in (1..perm.len()).rev() {
        let j = rng.gen_range(0..=i);
        perm.swap(i, j);
    }
}

/// Number of `k` with `π(k) > π(k+1)`.
pub fn descents(perm: &[usize]) -> usize {
    perm.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Sum of the (1-based) positions `k` with `π(k) > π(k+1)`.
pub fn major_index(perm: &[usize]) -> usize {
    perm.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(k, _)| k + 1)
        .sum()
}

#[derive(Default, Clone)]
struct Partial {
    sum: u128,
    sum_sq: u128,
    hits: Vec<u64>,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
        if self.hits.is_empty() {
            self.hits = other.hits;
        } else {
            for (a, b) in self.hits.iter_mut().zip(other.hits) {
                *a += b;
            }
        }
        self
    }
}

fn run_chunk(
    mut rng: Xoshiro256PlusPlus,
    statistic: Statistic,
    n: usize,
    trials: u64,
    thresholds: &[i64],
) -> Partial {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut out = Partial {
        hits: vec![0; thresholds.len()],
        ..Partial::default()
    };
    for _ in 0..trials {
        shuffle(&mut rng, &mut perm);
        let v = match statistic {
            Statistic::Descents => descents(&perm),
            Statistic::MajorIndex => major_index(&perm),
        };
        out.sum += v as u128;
        out.sum_sq += (v * v) as u128;
        for (h, &t) in out.hits.iter_mut().zip(thresholds) {
            if v as i64 >= t {
                *h += 1;
            }
        }
    }
    out
}

fn chunk_plan(seed: u64, trials: u64) -> Vec<(Xoshiro256PlusPlus, u64)> {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let mut plan = Vec::new();
    let mut left = trials;
    while left > 0 {
        let size = left.min(CHUNK_TRIALS);
        plan.push((rng.clone(), size));
        rng.jump();
        left -= size;
    }
    plan
}

fn sample_stats_impl(
    statistic: Statistic,
    n: usize,
    trials: u64,
    seed: u64,
    thresholds: &[i64],
    parallel: bool,
) -> Result<SampleStats> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "sampling needs n >= 2, got {n}"
        )));
    }
    if trials == 0 {
        return Err(Error::InvalidArgument(
            "sampling needs at least one trial".into(),
        ));
    }
    let plan = chunk_plan(seed, trials);
    let job =
        |(rng, size): (Xoshiro256PlusPlus, u64)| run_chunk(rng, statistic, n, size, thresholds);
    let total = if parallel {
        plan.into_par_iter()
            .map(job)
            .reduce(Partial::default, Partial::merge)
    } else {
        plan.into_iter()
            .map(job)
            .fold(Partial::default(), Partial::merge)
    };

    let nt = trials as f64;
    let mean = total.sum as f64 / nt;
    let variance = if trials > 1 {
        // Exact integer numerator: N Σx² - (Σx)².
        let num = trials as u128 * total.sum_sq - total.sum * total.sum;
        num as f64 / (nt * (nt - 1.0))
    } else {
        0.0
    };
    let hits = if total.hits.is_empty() {
        vec![0; thresholds.len()]
    } else {
        total.hits
    };
    Ok(SampleStats {
        statistic,
        n,
        trials,
        mean,
        variance,
        tail_hits: thresholds.iter().copied().zip(hits).collect(),
        seed,
    })
}

/// Samples `trials` uniform permutations of size `n` and summarizes one
/// statistic. Deterministic for fixed arguments.
pub fn sample_stats(
    statistic: Statistic,
    n: usize,
    trials: u64,
    seed: u64,
    thresholds: &[i64],
) -> Result<SampleStats> {
    sample_stats_impl(statistic, n, trials, seed, thresholds, true)
}
