use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::CountDistribution;
use crate::{Error, Result, Statistic};

pub const EULERIAN_CAP: usize = 1000;
pub const MAHONIAN_CAP: usize = 400;

fn check_size(what: &'static str, n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::Size { what, n, cap });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "{what} needs n >= 2, got {n}"
        )));
    }
    Ok(())
}

pub fn eulerian(n: usize) -> Result<CountDistribution> {
    eulerian_with_cap(n, EULERIAN_CAP)
}

/// Eulerian row by `A(m,k) = (k+1) A(m-1,k) + (m-k) A(m-1,k-1)`.
pub fn eulerian_with_cap(n: usize, cap: usize) -> Result<CountDistribution> {
    check_size("Eulerian row", n, cap)?;
    let mut row = vec![BigUint::one()];
    for m in 2..=n {
        let mut next = Vec::with_capacity(m);
        for k in 0..m {
            let mut v = BigUint::zero();
            if let Some(a) = row.get(k) {
                v += a * (k as u64 + 1);
            }
            if k > 0 {
                v += &row[k - 1] * (m - k) as u64;
            }
            next.push(v);
        }
        row = next;
    }
    CountDistribution::from_counts(Statistic::Descents, n, row)
}

pub fn mahonian(n: usize) -> Result<CountDistribution> {
    mahonian_with_cap(n, MAHONIAN_CAP)
}

/// Coefficients of `∏_{m=1}^{n} (1 + q + … + q^{m-1})`. Each factor is one
/// prefix-sum pass followed by one subtraction pass.
pub fn mahonian_with_cap(n: usize, cap: usize) -> Result<CountDistribution> {
    check_size("Mahonian row", n, cap)?;
    let mut row = vec![BigUint::one()];
    for m in 2..=n {
        let len = row.len() + m - 1;
        row.resize(len, BigUint::zero());
        for i in 1..len {
            let (done, rest) = row.split_at_mut(i);
            rest[0] += &done[i - 1];
        }
        for i in (m..len).rev() {
            let (low, high) = row.split_at_mut(i);
            high[0] -= &low[i - m];
        }
    }
    CountDistribution::from_counts(Statistic::MajorIndex, n, row)
}
