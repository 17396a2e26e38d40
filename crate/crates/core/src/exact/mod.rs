//! Exact distributions of `D_n` and `M_n` and their tails.
//!
//! Rows are exact big-integer counts over `n!`. Tails are exchanged in log
//! space so that `n = 400` does not underflow.

mod cache;
mod fourier;
mod irwin_hall;
mod rows;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::sldp::ceil_snapped;
use crate::{Error, Result, Statistic};

pub use cache::{
    cache_path, cached_distribution, load_cached, store_cached, CACHE_MAGIC, CACHE_VERSION,
};
pub use fourier::{pmf_via_fourier, FourierPmf, NEGATIVE_MASS_TOLERANCE};
pub use irwin_hall::{irwin_hall_tail, IRWIN_HALL_CAP};
pub use rows::{
    eulerian, eulerian_with_cap, mahonian, mahonian_with_cap, EULERIAN_CAP, MAHONIAN_CAP,
};

/// Exact distribution of one statistic on `S_n`: `counts[k]` permutations
/// take the value `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountDistribution {
    statistic: Statistic,
    n: usize,
    counts: Vec<BigUint>,
    total: BigUint,
}

impl CountDistribution {
    /// Wraps a row, checking its length and that it sums to `n!`.
    pub fn from_counts(statistic: Statistic, n: usize, counts: Vec<BigUint>) -> Result<Self> {
        let expected_len = statistic.support_max(n) + 1;
        if counts.len() != expected_len {
            return Err(Error::InvalidArgument(format!(
                "{statistic} row for n = {n} must have {expected_len} entries, got {}",
                counts.len()
            )));
        }
        let total = factorial(n);
        let sum: BigUint = counts.iter().sum();
        if sum != total {
            return Err(Error::InvalidArgument(format!(
                "{statistic} row for n = {n} does not sum to n!"
            )));
        }
        Ok(CountDistribution {
            statistic,
            n,
            counts,
            total,
        })
    }

    pub fn statistic(&self) -> Statistic {
        self.statistic
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    /// `n!`
    pub fn total(&self) -> &BigUint {
        &self.total
    }

    pub fn support_max(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn mean(&self) -> BigRational {
        self.moment(1)
    }

    pub fn variance(&self) -> BigRational {
        let m = self.mean();
        self.moment(2) - &m * &m
    }

    fn moment(&self, power: u32) -> BigRational {
        let num: BigUint = self
            .counts
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigUint::from(k).pow(power))
            .sum();
        BigRational::new(BigInt::from(num), BigInt::from(self.total.clone()))
    }

    /// Probabilities as doubles, rounded from the exact ratios.
    pub fn probabilities(&self) -> Vec<f64> {
        let total = BigInt::from(self.total.clone());
        self.counts
            .iter()
            .map(|c| {
                BigRational::new_raw(BigInt::from(c.clone()), total.clone())
                    .to_f64()
                    .unwrap_or(0.0)
            })
            .collect()
    }

    /// `P(X ≥ threshold)`.
    pub fn tail_at(&self, threshold: i64) -> Result<ExactTail> {
        let support_max = self.support_max() as i64;
        if threshold > support_max {
            return Err(Error::EmptyTail {
                threshold,
                support_max,
            });
        }
        let start = threshold.max(0) as usize;
        let numerator: BigUint = self.counts[start..].iter().sum();
        let log_value = (log_biguint(&numerator) - log_biguint(&self.total)).min(0.0);
        Ok(ExactTail {
            numerator,
            log_value,
            threshold,
        })
    }

    /// `P(D_n ≥ nx)` or `P(M_n ≥ n²x)`, through the integer threshold
    /// `⌈nx⌉` or `⌈n²x⌉`.
    pub fn tail(&self, x: f64) -> Result<ExactTail> {
        check_level(self.statistic, x)?;
        self.tail_at(threshold(self.statistic, self.n, x))
    }
}

/// Exact tail probability stored as a numerator over `n!`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactTail {
    pub numerator: BigUint,
    /// `log(numerator) - log(n!)`.
    pub log_value: f64,
    pub threshold: i64,
}

impl ExactTail {
    pub fn probability(&self) -> f64 {
        self.log_value.exp()
    }
}

/// Integer threshold `⌈nx⌉` or `⌈n²x⌉`, snapped against rounding noise.
pub fn threshold(statistic: Statistic, n: usize, x: f64) -> i64 {
    ceil_snapped(statistic.scale(n) * x) as i64
}

fn check_level(statistic: Statistic, x: f64) -> Result<()> {
    let ok = match statistic {
        Statistic::Descents => x > 0.0 && x < 1.0,
        Statistic::MajorIndex => x > 0.0 && x <= 0.5,
    };
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidArgument(format!(
            "level x = {x} is outside the support of {statistic}"
        )))
    }
}

/// Exact row for either statistic, within the default caps.
pub fn distribution(statistic: Statistic, n: usize) -> Result<CountDistribution> {
    match statistic {
        Statistic::Descents => eulerian(n),
        Statistic::MajorIndex => mahonian(n),
    }
}

/// Exact tail of a freshly computed row.
pub fn tail(statistic: Statistic, n: usize, x: f64) -> Result<ExactTail> {
    check_level(statistic, x)?;
    distribution(statistic, n)?.tail(x)
}

pub fn factorial(n: usize) -> BigUint {
    (2..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// Natural log of a big integer from its top 64 bits and bit length.
/// Returns `-∞` for zero.
pub fn log_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits == 0 {
        return f64::NEG_INFINITY;
    }
    if bits <= 64 {
        return (x.to_u64().expect("fits in 64 bits") as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().expect("top word fits in 64 bits");
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}
