//! Major index: first-order bracket.

use num_complex::Complex64;

use super::series::{monomial, PolySeries};
use super::{frac_ceil, integrate_against_gaussian, log_gaussian_prefactor, TailApprox};
use crate::cgf::default_cgf;
use crate::saddle::SaddlePoint;
use crate::{Error, Result, Statistic};

/// Highest bracket order implemented for the major index.
pub const MAX_ORDER: usize = 1;

fn require_major(sp: &SaddlePoint) -> Result<()> {
    if sp.statistic != Statistic::MajorIndex {
        return Err(Error::StatisticMismatch {
            expected: Statistic::MajorIndex,
            found: sp.statistic,
        });
    }
    Ok(())
}

/// `(h1, h2, ℓ_M(3), ℓ_M(4))` at the saddle point.
fn local_terms(sp: &SaddlePoint) -> (f64, f64, f64, f64) {
    let cgf = default_cgf();
    let h = |k: usize| {
        sp.h.get(k)
            .copied()
            .unwrap_or_else(|| cgf.h_deriv(k, sp.t_x))
    };
    let m = |k: usize| {
        sp.ell_m
            .get(k)
            .copied()
            .unwrap_or_else(|| cgf.lm_deriv(k, sp.t_x))
    };
    (h(1), h(2), m(3), m(4))
}

/// First two coefficients of `exp(n L_n(t) - n L_M(t) - H(t)) = 1 + a_1/n + a_2/n² + …`.
///
/// `a_1 = -t(1+t)/24 + t L_D'(t)/12` collects the `t/(2n) - L_D(t/n)` shift
/// and the first Euler–Maclaurin correction; `a_2` keeps only `a_1²/2`.
pub fn a_coeffs(t: f64) -> [f64; 2] {
    let a1 = -t * (1.0 + t) / 24.0 + t * default_cgf().ld_deriv(1, t) / 12.0;
    [a1, a1 * a1 / 2.0]
}

/// `c_{n,1}(x)` in the closed form usually displayed.
pub fn c_n1_as_printed(sp: &SaddlePoint) -> f64 {
    let t = sp.t_x;
    let s2 = sp.sigma2;
    let s4 = s2 * s2;
    let (h1, h2, l3, l4) = local_terms(sp);
    t / 2.0 - 1.0 / (s2 * t * t) - h2 / (2.0 * s2) - h1 * h1 / (2.0 * s2) + h1 / (s2 * t)
        - l3 / (2.0 * s4 * t)
        + l4 / (8.0 * s4)
        + h1 * l3 / (2.0 * s4)
        - 5.0 * l3 * l3 / (24.0 * s4 * s2)
}

/// The `w`-series whose Gaussian average gives `1 + c_{n,1}/n`, in powers of
/// `ε = n^{-1/2}`, before integration.
pub fn phi_series(sp: &SaddlePoint) -> PolySeries {
    let t = sp.t_x;
    let (h1, h2, l3, l4) = local_terms(sp);
    let i = Complex64::new(0.0, 1.0);

    let mut exponent = PolySeries::zero(2);
    exponent.add_term(1, &monomial(i * h1, 1));
    exponent.add_term(1, &monomial(i.powu(3) * (l3 / 6.0), 3));
    exponent.add_term(2, &monomial(i.powu(2) * (h2 / 2.0), 2));
    exponent.add_term(2, &monomial(i.powu(4) * (l4 / 24.0), 4));

    let mut geometric = PolySeries::zero(2);
    for j in 0..=2 {
        geometric.add_term(j, &monomial((-i / t).powu(j as u32), j));
    }
    // Euler–Maclaurin endpoint correction of the lattice sum.
    let mut endpoint = PolySeries::one(2);
    endpoint.add_term(2, &[Complex64::new(t / 2.0, 0.0)]);

    exponent.exp().mul(&geometric).mul(&endpoint)
}

/// `c_{n,1}(x)` obtained by integrating [`phi_series`] against
/// `exp(-σ_x² w²/2)`.
pub fn c_n1_generated(sp: &SaddlePoint) -> Result<f64> {
    require_major(sp)?;
    let raw = integrate_against_gaussian(&phi_series(sp), 0.0, sp.sigma2);
    Ok(raw[2].re)
}

/// `m_{n,1}(x) = a_1 - {n²x} t_x + c_{n,1}(x)`.
pub fn m_n1(sp: &SaddlePoint, n: usize) -> f64 {
    let t = sp.t_x;
    let frac = frac_ceil((n as f64).powi(2) * sp.x).value();
    a_coeffs(t)[0] - frac * t + c_n1_as_printed(sp)
}

/// [`m_n1`] with `c_{n,1}` taken from the series generator.
pub fn m_n1_assembled(sp: &SaddlePoint, n: usize) -> Result<f64> {
    let t = sp.t_x;
    let frac = frac_ceil((n as f64).powi(2) * sp.x).value();
    Ok(a_coeffs(t)[0] - frac * t + c_n1_generated(sp)?)
}

/// Order-`p` approximation of `log P(M_n ≥ n²x)`, `p ∈ {0, 1}`.
pub fn expansion_major(sp: &SaddlePoint, n: usize, p: usize) -> Result<TailApprox> {
    require_major(sp)?;
    if p > MAX_ORDER {
        return Err(Error::Order {
            requested: p,
            max: MAX_ORDER,
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let h0 =
        sp.h.first()
            .copied()
            .unwrap_or_else(|| default_cgf().h_deriv(0, sp.t_x));
    let log_leading = -(n as f64) * sp.rate + h0 - log_gaussian_prefactor(sp.sigma(), sp.t_x, n);
    let coefficients = if p == 0 {
        Vec::new()
    } else {
        vec![m_n1(sp, n)]
    };
    TailApprox::assemble(Statistic::MajorIndex, n, sp.x, log_leading, &coefficients)
}
