//! Cumulant generating functions of the uniform building blocks.
//!
//! * `L_D(t) = log((e^t - 1)/t)`, the CGF of a Uniform[0,1] variable.
//! * `L_M(t) = ∫₀¹ L_D(xt) dx`.
//! * `H(t) = (L_D(t) - t)/2`.
//! * `L_n(t) = (1/n) Σ_{k=1}^n L_D(tk/n) - L_D(t/n)`, the exact finite-`n`
//!   transform of the inversion-count decomposition.
//!
//! Near `t = 0` every function switches to its Bernoulli series, which
//! converges for `|t| < 2π`; away from zero `L_D^{(k)}` uses the exact
//! polynomial form in `u = 1/(e^t - 1)` (see [`CgfDerivRepr`]) and `L_M^{(k)}`
//! uses Gauss–Legendre quadrature of `x^k L_D^{(k)}(xt)`.

mod bernoulli;
mod deriv;
mod gauss_legendre;

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use crate::{Error, Result};

pub use bernoulli::{bernoulli, BernoulliTable};
pub use deriv::{all_positive, literature_coefficients, CgfDerivRepr};
pub use gauss_legendre::GaussLegendre;

use deriv::horner;

/// Orders whose closed-form coefficients are precomputed.
const CACHED_ORDERS: usize = 24;

/// Numerical knobs shared by every evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Below this `|t|` the Bernoulli series is used.
    pub series_threshold: f64,
    /// Number of even Bernoulli terms kept in the series.
    pub series_terms: usize,
    /// Gauss–Legendre nodes for `L_M` and its derivatives.
    pub quadrature_nodes: usize,
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig {
            series_threshold: 2.5,
            series_terms: 40,
            quadrature_nodes: 64,
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        let two_pi = 2.0 * std::f64::consts::PI;
        if !(self.series_threshold > 0.0 && self.series_threshold < two_pi) {
            return Err(Error::InvalidArgument(format!(
                "series_threshold must lie in (0, 2π), got {}",
                self.series_threshold
            )));
        }
        if self.series_terms < 10 {
            return Err(Error::InvalidArgument(format!(
                "series_terms must be at least 10, got {}",
                self.series_terms
            )));
        }
        if self.quadrature_nodes < 2 {
            return Err(Error::InvalidArgument(
                "quadrature_nodes must be at least 2".into(),
            ));
        }
        Ok(())
    }
}

/// Taylor coefficients of the `k`-th derivative of `lin·t + Σ_j c_j t^{2j}`,
/// stored so that the sum is `t^{2·j0 - k} Σ_i coeffs[i] (t²)^i`.
#[derive(Debug, Clone)]
struct OrderSeries {
    linear: f64,
    linear_power: i32,
    j0: usize,
    coeffs: Vec<f64>,
}

impl OrderSeries {
    fn eval(&self, order: usize, t: f64) -> f64 {
        let s = t * t;
        let tail = horner(&self.coeffs, s) * t.powi(2 * self.j0 as i32 - order as i32);
        let lin = match self.linear_power {
            1 => self.linear * t,
            0 => self.linear,
            _ => 0.0,
        };
        lin + tail
    }
}

/// Builds the per-order series tables for `lin·t + Σ_{j≥1} B_{2j} t^{2j} / (2j · extra(j) · (2j)!)`.
fn series_tables(
    table: &BernoulliTable,
    terms: usize,
    linear: f64,
    max_order: usize,
    extra: impl Fn(usize) -> u64,
) -> Vec<OrderSeries> {
    (0..=max_order)
        .map(|k| {
            let j0 = (k.div_ceil(2)).max(1);
            let coeffs = (j0..=terms)
                .map(|j| {
                    // d^k/dt^k t^{2j} = (2j)!/(2j-k)! t^{2j-k}, so the
                    // coefficient is B_{2j} / (2j · extra · (2j-k)!).
                    let mut denom = BigInt::from(2 * j as u64) * BigInt::from(extra(j));
                    for i in 2..=(2 * j - k) {
                        denom *= BigInt::from(i as u64);
                    }
                    let c = table.get(2 * j) / BigRational::from_integer(denom);
                    c.to_f64().unwrap_or(0.0)
                })
                .collect();
            OrderSeries {
                linear,
                linear_power: 1 - k as i32,
                j0,
                coeffs,
            }
        })
        .collect()
}

/// Evaluator for `L_D`, `L_M`, `H`, `L_n` and their derivatives under a fixed
/// [`EvalConfig`]. Immutable once built; share it freely across threads.
#[derive(Debug, Clone)]
pub struct Cgf {
    config: EvalConfig,
    bernoulli: BernoulliTable,
    ld_series: Vec<OrderSeries>,
    lm_series: Vec<OrderSeries>,
    // (constant, u-polynomial, b_k) for k = 1..=CACHED_ORDERS, index k - 1.
    closed: Vec<(f64, Vec<f64>, f64)>,
    quadrature: GaussLegendre,
}

impl Default for Cgf {
    fn default() -> Self {
        Cgf::new(EvalConfig::default()).expect("default configuration is valid")
    }
}

impl Cgf {
    pub fn new(config: EvalConfig) -> Result<Self> {
        config.validate()?;
        let bernoulli = BernoulliTable::new(2 * config.series_terms);
        let ld_series = series_tables(&bernoulli, config.series_terms, 0.5, CACHED_ORDERS, |_| 1);
        let lm_series = series_tables(&bernoulli, config.series_terms, 0.25, CACHED_ORDERS, |j| {
            2 * j as u64 + 1
        });
        let mut closed = Vec::with_capacity(CACHED_ORDERS);
        let mut repr = CgfDerivRepr::first();
        loop {
            closed.push((
                repr.constant().to_f64().unwrap_or(0.0),
                repr.u_poly_f64(),
                repr.t_pow_coeff().to_f64().unwrap_or(f64::NAN),
            ));
            if repr.order() == CACHED_ORDERS {
                break;
            }
            repr = repr.next();
        }
        Ok(Cgf {
            config,
            bernoulli,
            ld_series,
            lm_series,
            closed,
            quadrature: GaussLegendre::new(config.quadrature_nodes),
        })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.config
    }

    pub fn bernoulli_table(&self) -> &BernoulliTable {
        &self.bernoulli
    }

    /// `B_k` as `f64` for `k ≤ 2·series_terms`.
    pub fn bernoulli_f64(&self, k: usize) -> f64 {
        if k <= self.bernoulli.max_index() {
            self.bernoulli.get(k).to_f64().unwrap_or(f64::NAN)
        } else {
            bernoulli(k).to_f64().unwrap_or(f64::NAN)
        }
    }

    fn in_series_region(&self, t: f64) -> bool {
        t.abs() < self.config.series_threshold
    }

    /// `L_D(t)` by the Bernoulli series, regardless of `t`.
    pub fn ld_series(&self, k: usize, t: f64) -> f64 {
        if k <= CACHED_ORDERS {
            self.ld_series[k].eval(k, t)
        } else {
            let tables = series_tables(&self.bernoulli, self.config.series_terms, 0.5, k, |_| 1);
            tables[k].eval(k, t)
        }
    }

    /// `L_D^{(k)}(t)` by the closed form, regardless of `t` (`t ≠ 0`).
    pub fn ld_closed(&self, k: usize, t: f64) -> f64 {
        if k == 0 {
            return if t > 0.0 {
                t + (-(-t).exp()).ln_1p() - t.ln()
            } else {
                (-t.exp_m1()).ln() - (-t).ln()
            };
        }
        if t < 0.0 {
            return if k == 1 {
                1.0 - self.ld_closed(1, -t)
            } else if k.is_multiple_of(2) {
                self.ld_closed(k, -t)
            } else {
                -self.ld_closed(k, -t)
            };
        }
        let u = 1.0 / t.exp_m1();
        let tk = t.powi(k as i32);
        if k <= CACHED_ORDERS {
            let (c, poly, b) = &self.closed[k - 1];
            c + horner(poly, u) + b / tk
        } else {
            CgfDerivRepr::new(k).eval(t)
        }
    }

    pub fn ld(&self, t: f64) -> f64 {
        self.ld_deriv(0, t)
    }

    /// `L_D^{(k)}(t)`; `k = 0` gives `L_D` itself.
    pub fn ld_deriv(&self, k: usize, t: f64) -> f64 {
        if self.in_series_region(t) {
            self.ld_series(k, t)
        } else {
            self.ld_closed(k, t)
        }
    }

    /// `L_M^{(k)}(t)` by the integrated series, regardless of `t`.
    pub fn lm_series(&self, k: usize, t: f64) -> f64 {
        if k <= CACHED_ORDERS {
            self.lm_series[k].eval(k, t)
        } else {
            let tables = series_tables(&self.bernoulli, self.config.series_terms, 0.25, k, |j| {
                2 * j as u64 + 1
            });
            tables[k].eval(k, t)
        }
    }

    /// `L_M^{(k)}(t)` by quadrature of `x^k L_D^{(k)}(xt)` over `[0, 1]`.
    pub fn lm_quadrature(&self, k: usize, t: f64) -> f64 {
        self.quadrature
            .integrate(|x| x.powi(k as i32) * self.ld_deriv(k, x * t))
    }

    pub fn lm(&self, t: f64) -> f64 {
        self.lm_deriv(0, t)
    }

    /// `L_M^{(k)}(t)`; `k = 0` gives `L_M` itself.
    pub fn lm_deriv(&self, k: usize, t: f64) -> f64 {
        if self.in_series_region(t) {
            self.lm_series(k, t)
        } else {
            self.lm_quadrature(k, t)
        }
    }

    /// `H^{(k)}(t)` with `H(t) = (L_D(t) - t)/2`.
    pub fn h_deriv(&self, k: usize, t: f64) -> f64 {
        match k {
            0 => 0.5 * (self.ld(t) - t),
            1 => 0.5 * (self.ld_deriv(1, t) - 1.0),
            _ => 0.5 * self.ld_deriv(k, t),
        }
    }

    /// `L_n(t)` by its defining finite sum.
    pub fn ln_exact(&self, n: usize, t: f64) -> Result<f64> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("L_n needs n ≥ 2, got {n}")));
        }
        let nf = n as f64;
        let sum: f64 = (1..=n).map(|k| self.ld(t * k as f64 / nf)).sum();
        Ok(sum / nf - self.ld(t / nf))
    }

    /// Euler–Maclaurin expansion of `L_n(t)` with `p` Bernoulli corrections:
    /// `L_M(t) + H(t)/n + t/(2n) - L_D(t/n) + Δ_{n,p}(t)/n`.
    pub fn euler_maclaurin_ln(&self, n: usize, t: f64, p: usize) -> Result<f64> {
        if n < 2 {
            return Err(Error::InvalidArgument(format!("L_n needs n ≥ 2, got {n}")));
        }
        if p < 1 {
            return Err(Error::InvalidArgument("Euler–Maclaurin needs p ≥ 1".into()));
        }
        if t == 0.0 {
            return Err(Error::InvalidArgument(
                "Euler–Maclaurin expansion is evaluated at t ≠ 0".into(),
            ));
        }
        let nf = n as f64;
        Ok(
            self.lm(t) + self.h_deriv(0, t) / nf + t / (2.0 * nf) - self.ld(t / nf)
                + self.em_delta(n, t, p) / nf,
        )
    }

    /// `Δ_{n,p}(t) = Σ_{k=1}^p B_{2k}/(2k)! (t/n)^{2k-1} (L_D^{(2k-1)}(t) - L_D^{(2k-1)}(0))`.
    pub fn em_delta(&self, n: usize, t: f64, p: usize) -> f64 {
        let r = t / n as f64;
        let mut fact = 1.0;
        let mut out = 0.0;
        for k in 1..=p {
            fact *= (2 * k - 1) as f64 * (2 * k) as f64;
            let at_zero = if k == 1 { 0.5 } else { 0.0 };
            let d = self.ld_deriv(2 * k - 1, t) - at_zero;
            out += self.bernoulli_f64(2 * k) / fact * r.powi(2 * k as i32 - 1) * d;
        }
        out
    }
}

/// Process-wide evaluator with the default configuration.
pub fn default_cgf() -> &'static Cgf {
    static CGF: OnceLock<Cgf> = OnceLock::new();
    CGF.get_or_init(Cgf::default)
}

pub fn ld(t: f64) -> f64 {
    default_cgf().ld(t)
}

pub fn ld_deriv(k: usize, t: f64) -> f64 {
    default_cgf().ld_deriv(k, t)
}

pub fn lm(t: f64) -> f64 {
    default_cgf().lm(t)
}

pub fn lm_deriv(k: usize, t: f64) -> f64 {
    default_cgf().lm_deriv(k, t)
}

pub fn h_deriv(k: usize, t: f64) -> f64 {
    default_cgf().h_deriv(k, t)
}

pub fn ln_exact(n: usize, t: f64) -> Result<f64> {
    default_cgf().ln_exact(n, t)
}

pub fn euler_maclaurin_ln(n: usize, t: f64, p: usize) -> Result<f64> {
    default_cgf().euler_maclaurin_ln(n, t, p)
}

#[cfg(test)]
mod tests;
