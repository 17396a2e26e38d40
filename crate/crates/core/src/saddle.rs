//! Dual equations `L_D'(t_x) = x` and `L_M'(t_x) = x`.

use serde::{Deserialize, Serialize};

use crate::cgf::{default_cgf, Cgf};
use crate::{Error, Result, Statistic};

/// Residual tolerance on the dual equation.
pub const DUAL_TOLERANCE: f64 = 1e-12;
pub const MAX_ITERATIONS: usize = 200;
pub const DEFAULT_MAX_ORDER: usize = 6;

const T_LO: f64 = 1e-8;

/// Solved dual point with the derivative tables used by the expansions.
///
/// Tables are indexed by derivative order, with index 0 holding the function
/// value itself: `ell_d[k] = L_D^{(k)}(t_x)`, `ell_m[k] = L_M^{(k)}(t_x)`,
/// `h[k] = H^{(k)}(t_x)`. `ell_m` and `h` are empty for descents.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SaddlePoint {
    pub statistic: Statistic,
    pub x: f64,
    pub t_x: f64,
    pub sigma2: f64,
    pub rate: f64,
    #[serde(rename = "ell_D")]
    pub ell_d: Vec<f64>,
    #[serde(rename = "ell_M")]
    pub ell_m: Vec<f64>,
    pub h: Vec<f64>,
}

impl SaddlePoint {
    pub fn sigma(&self) -> f64 {
        self.sigma2.sqrt()
    }

    /// Highest derivative order available in every table.
    pub fn max_order(&self) -> usize {
        self.ell_d.len().saturating_sub(1)
    }

    /// Derivative of the governing CGF (`L_D` or `L_M`) at `t_x`.
    pub fn ell(&self, k: usize) -> f64 {
        match self.statistic {
            Statistic::Descents => self.ell_d[k],
            Statistic::MajorIndex => self.ell_m[k],
        }
    }
}

/// Checks `x` against the open admissible interval of `statistic`.
pub fn check_admissible(statistic: Statistic, x: f64) -> Result<()> {
    let (lo, hi) = statistic.admissible();
    if x.is_finite() && x > lo && x < hi {
        Ok(())
    } else {
        Err(Error::Domain {
            statistic,
            x,
            lo,
            hi,
        })
    }
}

pub fn solve(statistic: Statistic, x: f64, max_order: usize) -> Result<SaddlePoint> {
    solve_with(default_cgf(), statistic, x, max_order)
}

pub fn solve_with(
    cgf: &Cgf,
    statistic: Statistic,
    x: f64,
    max_order: usize,
) -> Result<SaddlePoint> {
    check_admissible(statistic, x)?;
    if max_order < 2 {
        return Err(Error::InvalidArgument(format!(
            "max_order must be at least 2, got {max_order}"
        )));
    }
    let deriv = |k: usize, t: f64| match statistic {
        Statistic::Descents => cgf.ld_deriv(k, t),
        Statistic::MajorIndex => cgf.lm_deriv(k, t),
    };
    let t_x = dual_root(|t| deriv(1, t) - x, |t| deriv(2, t))?;

    let ell_d: Vec<f64> = (0..=max_order).map(|k| cgf.ld_deriv(k, t_x)).collect();
    let (ell_m, h) = match statistic {
        Statistic::Descents => (Vec::new(), Vec::new()),
        Statistic::MajorIndex => (
            (0..=max_order).map(|k| cgf.lm_deriv(k, t_x)).collect(),
            (0..=max_order)
                .map(|k| cgf.h_deriv(k, t_x))
                .collect::<Vec<_>>(),
        ),
    };
    let (value, sigma2) = match statistic {
        Statistic::Descents => (ell_d[0], ell_d[2]),
        Statistic::MajorIndex => (ell_m[0], ell_m[2]),
    };
    Ok(SaddlePoint {
        statistic,
        x,
        t_x,
        sigma2,
        rate: (x * t_x - value).max(0.0),
        ell_d,
        ell_m,
        h,
    })
}

/// Rate function `I(x) = x t_x - L(t_x)`.
pub fn rate(statistic: Statistic, x: f64) -> Result<f64> {
    Ok(solve(statistic, x, 2)?.rate)
}

/// Safeguarded Newton on an increasing `f` with derivative `df > 0`.
fn dual_root(f: impl Fn(f64) -> f64, df: impl Fn(f64) -> f64) -> Result<f64> {
    let mut lo = T_LO;
    if f(lo) > 0.0 {
        lo = 0.0;
    }
    let mut hi = 1.0;
    let mut fhi = f(hi);
    while fhi <= 0.0 {
        lo = hi;
        hi *= 2.0;
        if hi > 1e12 {
            return Err(Error::Convergence {
                iterations: 0,
                residual: fhi,
            });
        }
        fhi = f(hi);
    }

    let mut t = 0.5 * (lo + hi);
    let mut residual = f64::INFINITY;
    for _ in 0..MAX_ITERATIONS {
        let ft = f(t);
        residual = ft.abs();
        if residual <= DUAL_TOLERANCE {
            return Ok(t);
        }
        if ft > 0.0 {
            hi = t;
        } else {
            lo = t;
        }
        let slope = df(t);
        let newton = t - ft / slope;
        t = if slope > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= f64::EPSILON * hi {
            let ft = f(t);
            if ft.abs() <= DUAL_TOLERANCE {
                return Ok(t);
            }
            residual = ft.abs();
            break;
        }
    }
    Err(Error::Convergence {
        iterations: MAX_ITERATIONS,
        residual,
    })
}
