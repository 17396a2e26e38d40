//! Sharp large-deviation tail approximations.
//!
//! For descents, with `t_x` solving `L_D'(t_x) = x` and `σ_x² = L_D''(t_x)`,
//!
//! ```text
//! P(D_n ≥ nx) ≈ exp(-n I_D(x) - {nx} t_x) / (σ_x t_x √(2πn)) · [1 + Σ_k d_{n,k}/n^k]
//! ```
//!
//! and for the major index, with `L_M'(t_x) = x` and `σ_x² = L_M''(t_x)`,
//!
//! ```text
//! P(M_n ≥ n²x) ≈ exp(-n I_M(x) + H(t_x)) / (σ_x t_x √(2πn)) · [1 + m_{n,1}/n]
//! ```
//!
//! where `{y} = ⌈y⌉ - y`. The descents bracket is produced to any order by
//! [`descents::expansion_coefficients`]; the major-index bracket stops at
//! first order.

pub mod descents;
pub mod diagnostics;
pub mod gaussian;
pub mod major;
pub mod series;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Statistic};

pub use descents::{d_n1, d_n1_as_printed, expansion_descents};
pub use gaussian::{gaussian_moment_i, gaussian_moment_j};
pub use major::{a_coeffs, c_n1_as_printed, expansion_major, m_n1};
pub use series::{Poly, PolySeries};

/// Relative distance below which a product like `n·x` counts as an integer.
pub const INTEGER_SNAP: f64 = 1e-12;

/// `⌈y⌉`, treating `y` within rounding noise of an integer as that integer.
pub fn ceil_snapped(y: f64) -> f64 {
    let r = y.round();
    if (y - r).abs() <= INTEGER_SNAP * y.abs().max(1.0) {
        r
    } else {
        y.ceil()
    }
}

/// Fractional part `{y} = ⌈y⌉ - y ∈ [0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct FracPart(f64);

impl FracPart {
    pub fn value(self) -> f64 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0.0
    }
}

pub fn frac_ceil(y: f64) -> FracPart {
    let v = ceil_snapped(y) - y;
    // Snapping can leave a signed rounding residue.
    FracPart(if v.abs() <= INTEGER_SNAP * y.abs().max(1.0) {
        0.0
    } else {
        v
    })
}

/// An approximation of `log P(tail)` with its bracket partial sums.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TailApprox {
    pub statistic: Statistic,
    pub n: usize,
    pub x: f64,
    pub order: usize,
    /// Log of the prefactor in front of the bracket.
    pub log_leading: f64,
    /// `1`, `1 + c_1/n`, `1 + c_1/n + c_2/n²`, … up to `order`.
    pub bracket_terms: Vec<f64>,
    pub value_log: f64,
}

impl TailApprox {
    pub(crate) fn assemble(
        statistic: Statistic,
        n: usize,
        x: f64,
        log_leading: f64,
        coefficients: &[f64],
    ) -> Result<Self> {
        let nf = n as f64;
        let mut bracket_terms = Vec::with_capacity(coefficients.len() + 1);
        let mut acc = 1.0;
        bracket_terms.push(acc);
        for (k, c) in coefficients.iter().enumerate() {
            acc += c / nf.powi(k as i32 + 1);
            bracket_terms.push(acc);
        }
        if acc.is_nan() || acc <= 0.0 {
            return Err(Error::NonPositiveBracket { value: acc });
        }
        Ok(TailApprox {
            statistic,
            n,
            x,
            order: coefficients.len(),
            log_leading,
            value_log: log_leading + acc.ln(),
            bracket_terms,
        })
    }

    pub fn bracket(&self) -> f64 {
        *self
            .bracket_terms
            .last()
            .expect("bracket has at least one term")
    }
}

/// `log(σ t √(2πn))`.
pub(crate) fn log_gaussian_prefactor(sigma: f64, t: f64, n: usize) -> f64 {
    (sigma * t).ln() + 0.5 * (2.0 * std::f64::consts::PI * n as f64).ln()
}

/// Integrates each `ε^k` polynomial against `exp(-i a w - s w²/2)` with
/// `a = α ε`, dividing out `(√(2π)/√s)·e^{-a²/(2s)}`. Returns the resulting
/// scalar series in `ε`.
pub fn integrate_against_gaussian(
    series: &PolySeries,
    alpha: f64,
    precision: f64,
) -> Vec<Complex64> {
    let order = series.order();
    let root = precision.sqrt();
    let b = alpha / root;
    let mut out = vec![Complex64::new(0.0, 0.0); order + 1];
    for k in 0..=order {
        for (p, c) in series.term(k).iter().enumerate() {
            if c.norm() == 0.0 {
                continue;
            }
            let scale = root.powi(-(p as i32));
            for (j, q) in gaussian::reduced_moment_poly(p).iter().enumerate() {
                if k + j > order || q.norm() == 0.0 {
                    continue;
                }
                out[k + j] += c * q * scale * b.powi(j as i32);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frac_ceil_examples() {
        assert_eq!(frac_ceil(3.0).value(), 0.0);
        assert!((frac_ceil(2.3).value() - 0.7).abs() < 1e-15);
        assert!((frac_ceil(-1.25).value() - 0.25).abs() < 1e-15);
        // n²x products that land a hair above an integer.
        assert_eq!(frac_ceil(1600.0 * 0.28).value(), 0.0);
        assert_eq!(frac_ceil(40.0 * 40.0 * 0.38).value(), 0.0);
        assert_eq!(ceil_snapped(50.0 * 0.7), 35.0);
        assert_eq!(ceil_snapped(35.7), 36.0);
    }

    #[test]
    fn frac_ceil_range() {
        for i in 0..1000 {
            let y = -50.0 + i as f64 * 0.1037;
            let f = frac_ceil(y).value();
            assert!((0.0..1.0).contains(&f), "{y} -> {f}");
        }
    }

    #[test]
    fn bracket_must_stay_positive() {
        let err = TailApprox::assemble(Statistic::Descents, 10, 0.7, -3.0, &[-20.0]).unwrap_err();
        assert!(matches!(err, Error::NonPositiveBracket { .. }));
        let ok = TailApprox::assemble(Statistic::Descents, 10, 0.7, -3.0, &[2.0, 5.0]).unwrap();
        assert_eq!(ok.bracket_terms, vec![1.0, 1.2, 1.25]);
        assert!((ok.value_log - (-3.0 + 1.25f64.ln())).abs() < 1e-15);
    }
}
