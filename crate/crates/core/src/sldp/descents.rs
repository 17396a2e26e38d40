//! Descents: closed-form first coefficient and the generic-order generator.

use num_complex::Complex64;

use super::series::{monomial, PolySeries};
use super::{frac_ceil, integrate_against_gaussian, log_gaussian_prefactor, TailApprox};
use crate::cgf::default_cgf;
use crate::saddle::SaddlePoint;
use crate::{Error, Result, Statistic};

fn require_descents(sp: &SaddlePoint) -> Result<()> {
    if sp.statistic != Statistic::Descents {
        return Err(Error::StatisticMismatch {
            expected: Statistic::Descents,
            found: sp.statistic,
        });
    }
    Ok(())
}

/// `L_D^{(k)}(t_x)` for `k = 0..=max`, reusing the saddle table where filled.
pub(crate) fn ell_d_upto(sp: &SaddlePoint, max: usize) -> Vec<f64> {
    (0..=max)
        .map(|k| {
            sp.ell_d
                .get(k)
                .copied()
                .unwrap_or_else(|| default_cgf().ld_deriv(k, sp.t_x))
        })
        .collect()
}

fn d_n1_with(sp: &SaddlePoint, n: usize, shift_weight: f64) -> f64 {
    let t = sp.t_x;
    let s2 = sp.sigma2;
    let f = frac_ceil(n as f64 * sp.x).value();
    let ell = ell_d_upto(sp, 4);
    let (l3, l4) = (ell[3], ell[4]);
    (-1.0 / (t * t) - f / t - f * f / 2.0 - shift_weight * f * l3 / s2 - l3 / (2.0 * s2 * t)
        + l4 / (8.0 * s2)
        - 5.0 * l3 * l3 / (24.0 * s2 * s2))
        / s2
}

/// First bracket coefficient `d_{n,1}(x)`.
///
/// The `{nx}·ℓ_D(3)` term carries weight `1/(2σ_x⁴)`: it comes from
/// `-i v³ℓ_D(3)/(6σ_x³)` integrated against the phase `e^{-iav}`, and
/// `J_1(a) ≈ -3ia`. This is what the generic generator produces.
pub fn d_n1(sp: &SaddlePoint, n: usize) -> f64 {
    d_n1_with(sp, n, 0.5)
}

/// `d_{n,1}(x)` exactly as usually displayed in the literature, with weight
/// `1/(6σ_x⁴)` on the `{nx}·ℓ_D(3)` term. Identical to [`d_n1`] when
/// `nx` is an integer.
pub fn d_n1_as_printed(sp: &SaddlePoint, n: usize) -> f64 {
    d_n1_with(sp, n, 1.0 / 6.0)
}

/// Intermediate and final series of the descents bracket.
#[derive(Debug, Clone)]
pub struct DescentsExpansion {
    /// `Φ_n(v) e^{v²/2}` in powers of `ε = n^{-1/2}`: the polynomials `ψ_k`.
    pub psi: PolySeries,
    /// `ψ` divided by `1 + iv/(σ_x t_x √n)`: the polynomials `φ_k`.
    pub phi: PolySeries,
    /// Bracket as a series in `ε`, including the re-expanded
    /// `exp(-{nx}²/(2σ_x² n))` factor. Odd powers and imaginary parts vanish
    /// up to rounding.
    pub raw: Vec<Complex64>,
    /// `d_1, …, d_p`: the real parts of the even coefficients of `raw`.
    pub coefficients: Vec<f64>,
}

/// Generates the bracket coefficients `d_{n,1..p}` for a given fractional
/// shift `{nx}`.
///
/// 1. `log Φ_n(v) + v²/2 = Σ_{k=3}^{2p+3} (iv/σ_x)^k ℓ_D(k)/k! · ε^{k-2}`;
/// 2. exponentiate as a truncated series (`ψ_k`), multiply by the geometric
///    expansion of `(1 + iv ε/(σ_x t_x))^{-1}` (`φ_k`);
/// 3. integrate against `exp(-iav - v²/2)` with `a = {nx} ε/σ_x` kept exact
///    inside the Gaussian moments;
/// 4. multiply by the series of `exp(-a²/2)` so that the bracket sits in
///    front of `exp(-n I_D(x) - {nx} t_x)`.
pub fn expansion_coefficients(sp: &SaddlePoint, frac: f64, p: usize) -> Result<DescentsExpansion> {
    require_descents(sp)?;
    let order = 2 * p + 1;
    let sigma = sp.sigma();
    let t = sp.t_x;
    let ell = ell_d_upto(sp, order + 2);

    let mut log_char = PolySeries::zero(order);
    let mut fact = 2.0;
    for (k, &l) in ell.iter().enumerate().skip(3) {
        fact *= k as f64;
        let c = Complex64::new(0.0, 1.0 / sigma).powu(k as u32) * (l / fact);
        log_char.add_term(k - 2, &monomial(c, k));
    }
    let psi = log_char.exp();

    let mut geometric = PolySeries::zero(order);
    let step = Complex64::new(0.0, -1.0 / (sigma * t));
    for j in 0..=order {
        geometric.add_term(j, &monomial(step.powu(j as u32), j));
    }
    let phi = psi.mul(&geometric);

    let alpha = frac / sigma;
    let integrated = integrate_against_gaussian(&phi, alpha, 1.0);

    // exp(-α² ε² / 2)
    let mut damping = vec![Complex64::new(0.0, 0.0); order + 1];
    let mut term = 1.0;
    for j in 0..=order / 2 {
        if j > 0 {
            term *= -0.5 * alpha * alpha / j as f64;
        }
        damping[2 * j] = Complex64::new(term, 0.0);
    }
    let mut raw = vec![Complex64::new(0.0, 0.0); order + 1];
    for (i, a) in integrated.iter().enumerate() {
        for (j, b) in damping.iter().enumerate() {
            if i + j <= order {
                raw[i + j] += a * b;
            }
        }
    }
    let coefficients = (1..=p).map(|k| raw[2 * k].re).collect();
    Ok(DescentsExpansion {
        psi,
        phi,
        raw,
        coefficients,
    })
}

/// Order-`p` approximation of `log P(D_n ≥ nx)`.
pub fn expansion_descents(sp: &SaddlePoint, n: usize, p: usize) -> Result<TailApprox> {
    require_descents(sp)?;
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "n must be at least 2, got {n}"
        )));
    }
    let frac = frac_ceil(n as f64 * sp.x).value();
    let log_leading =
        -(n as f64) * sp.rate - frac * sp.t_x - log_gaussian_prefactor(sp.sigma(), sp.t_x, n);
    let coefficients = if p == 0 {
        Vec::new()
    } else {
        expansion_coefficients(sp, frac, p)?.coefficients
    };
    TailApprox::assemble(Statistic::Descents, n, sp.x, log_leading, &coefficients)
}
