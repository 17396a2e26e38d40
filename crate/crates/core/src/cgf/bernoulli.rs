use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact Bernoulli numbers `B_0..=B_max` with the convention `B_1 = +1/2`.
///
/// With this sign choice `log((e^t - 1)/t) = Σ_{k≥1} B_k t^k / (k·k!)`.
#[derive(Debug, Clone)]
pub struct BernoulliTable {
    values: Vec<BigRational>,
}

impl BernoulliTable {
    pub fn new(max_index: usize) -> Self {
        // B⁻ recurrence: Σ_{k=0}^{m} C(m+1, k) B⁻_k = 0 for m ≥ 1.
        let mut values: Vec<BigRational> = Vec::with_capacity(max_index + 1);
        values.push(BigRational::one());
        let mut binom_row: Vec<BigInt> = vec![BigInt::one(), BigInt::one()]; // row m+1 = 1
        for m in 1..=max_index {
            binom_row = next_binomial_row(&binom_row); // row m + 1
            if m > 1 && m % 2 == 1 {
                values.push(BigRational::zero());
                continue;
            }
            let mut acc = BigRational::zero();
            for (k, b) in values.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                acc += b * BigRational::from_integer(binom_row[k].clone());
            }
            let denom = BigRational::from_integer(BigInt::from(m as u64 + 1));
            values.push(-acc / denom);
        }
        if max_index >= 1 {
            values[1] = -values[1].clone();
        }
        BernoulliTable { values }
    }

    pub fn get(&self, k: usize) -> &BigRational {
        &self.values[k]
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    pub fn as_slice(&self) -> &[BigRational] {
        &self.values
    }
}

fn next_binomial_row(row: &[BigInt]) -> Vec<BigInt> {
    let mut next = Vec::with_capacity(row.len() + 1);
    next.push(BigInt::one());
    for w in row.windows(2) {
        next.push(&w[0] + &w[1]);
    }
    next.push(BigInt::one());
    next
}

/// `B_k` as an exact rational, `B_1 = 1/2`.
pub fn bernoulli(k: usize) -> BigRational {
    BernoulliTable::new(k).get(k).clone()
}
