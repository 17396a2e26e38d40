use num_complex::Complex64;
use rustfft::FftPlanner;

use super::rows::MAHONIAN_CAP;
use crate::{Error, Result};

/// Outputs below `-NEGATIVE_MASS_TOLERANCE` are reported as negative mass.
pub const NEGATIVE_MASS_TOLERANCE: f64 = 1e-9;

/// PMF of `M_n` recovered from its tilted characteristic function.
#[derive(Debug, Clone, PartialEq)]
pub struct FourierPmf {
    pub n: usize,
    pub tilt: f64,
    /// `P(M_n = k)` for `k = 0..=n(n-1)/2`.
    pub pmf: Vec<f64>,
    /// Most negative output, as a positive number, if any output fell below
    /// `-NEGATIVE_MASS_TOLERANCE`.
    pub max_negative_mass: Option<f64>,
}

/// `log(sinh(m s / 2) / sinh(s / 2))` for real `s ≥ 0`, with the `s → 0`
/// limit `log m`.
fn log_sinh_ratio(m: usize, s: f64) -> f64 {
    let m = m as f64;
    if s.abs() < 1e-12 {
        return m.ln();
    }
    let a = s.abs() / 2.0;
    // log sinh(y) = y + log((1 - e^{-2y})/2)
    let log_sinh = |y: f64| y + (-(-2.0 * y).exp_m1()).ln() - std::f64::consts::LN_2;
    log_sinh(m * a) - log_sinh(a)
}

/// `P(M_n = k)` for all `k` by inverting `E[exp((t + iv) M_n)]` on a DFT
/// grid of `N ≥ n(n-1)/2 + 1` points.
///
/// The transform is the product over `m ≤ n` of the tilted geometric sums
/// `(1/m) Σ_{j<m} e^{j(t+iv)} = e^{(m-1)(t+iv)/2} sinh(m(t+iv)/2) / (m sinh((t+iv)/2))`.
/// Each factor is divided by its value at `v = 0`, so the DFT returns the
/// tilted law `P(M_n = k) e^{tk} / E[e^{t M_n}]`; the tilt is undone in log
/// space. A tilt of `t_x/n` centres the tilted law near `n² x` and keeps
/// far-tail values accurate.
pub fn pmf_via_fourier(n: usize, tilt: f64) -> Result<FourierPmf> {
    if n > MAHONIAN_CAP {
        return Err(Error::Size {
            what: "Fourier inversion",
            n,
            cap: MAHONIAN_CAP,
        });
    }
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "Fourier inversion needs n >= 2, got {n}"
        )));
    }
    if !tilt.is_finite() || tilt.abs() * n as f64 > 600.0 {
        return Err(Error::InvalidArgument(format!(
            "tilt {tilt} is too large for n = {n}"
        )));
    }
    let support = n * (n - 1) / 2 + 1;
    let len = support.next_power_of_two();

    let mut values = vec![Complex64::new(1.0, 0.0); len];
    for m in 2..=n {
        let mf = m as f64;
        let norm = log_sinh_ratio(m, tilt);
        for (j, slot) in values.iter_mut().enumerate() {
            if j == 0 {
                continue;
            }
            let v = std::f64::consts::TAU * j as f64 / len as f64;
            let s = Complex64::new(tilt, v);
            let ratio = (s * (mf / 2.0)).sinh() / (s / 2.0).sinh();
            let phase = Complex64::from_polar(1.0, (mf - 1.0) * v / 2.0);
            *slot *= phase * ratio * (-norm).exp();
        }
    }

    FftPlanner::new().plan_fft_forward(len).process(&mut values);

    // log E[e^{t M_n}]
    let log_mgf: f64 = (2..=n)
        .map(|m| (m as f64 - 1.0) * tilt / 2.0 + log_sinh_ratio(m, tilt) - (m as f64).ln())
        .sum();
    let pmf: Vec<f64> = values[..support]
        .iter()
        .enumerate()
        .map(|(k, c)| {
            let tilted = c.re / len as f64;
            tilted * (log_mgf - tilt * k as f64).exp()
        })
        .collect();
    let min = pmf.iter().copied().fold(0.0, f64::min);
    let max_negative_mass = (min < -NEGATIVE_MASS_TOLERANCE).then_some(-min);
    Ok(FourierPmf {
        n,
        tilt,
        pmf,
        max_negative_mass,
    })
}
