//! Gaussian moments with a linear phase:
//!
//! ```text
//! I_m(a) = ∫ v^{2m}   exp(-i a v - v²/2) dv
//! J_m(a) = ∫ v^{2m+1} exp(-i a v - v²/2) dv
//! ```

use std::f64::consts::PI;

use num_complex::Complex64;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// Coefficients `κ_k` with `I_m(a) = √(2π) e^{-a²/2} Σ_k κ_k a^{2k}`.
pub fn moment_i_coefficients(m: usize) -> Vec<f64> {
    let lead = factorial(2 * m) / 2f64.powi(m as i32);
    (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            lead * sign * 2f64.powi(k as i32) / (factorial(2 * k) * factorial(m - k))
        })
        .collect()
}

/// Coefficients `κ_k` with `J_m(a) = -i √(2π) e^{-a²/2} Σ_k κ_k a^{2k+1}`.
pub fn moment_j_coefficients(m: usize) -> Vec<f64> {
    let lead = factorial(2 * m + 1) / 2f64.powi(m as i32);
    (0..=m)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            lead * sign * 2f64.powi(k as i32) / (factorial(2 * k + 1) * factorial(m - k))
        })
        .collect()
}

pub fn gaussian_moment_i(m: usize, a: f64) -> f64 {
    let a2 = a * a;
    let poly: f64 = moment_i_coefficients(m)
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * a2 + c);
    (2.0 * PI).sqrt() * (-0.5 * a2).exp() * poly
}

pub fn gaussian_moment_j(m: usize, a: f64) -> Complex64 {
    let a2 = a * a;
    let poly: f64 = moment_j_coefficients(m)
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * a2 + c);
    Complex64::new(0.0, -(2.0 * PI).sqrt() * (-0.5 * a2).exp() * a * poly)
}

/// `∫ v^p exp(-i a v - v²/2) dv / (√(2π) e^{-a²/2})` as a polynomial in `a`
/// (index = power of `a`).
pub fn reduced_moment_poly(p: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); p + 1];
    if p.is_multiple_of(2) {
        for (k, c) in moment_i_coefficients(p / 2).into_iter().enumerate() {
            out[2 * k] = Complex64::new(c, 0.0);
        }
    } else {
        for (k, c) in moment_j_coefficients(p / 2).into_iter().enumerate() {
            out[2 * k + 1] = Complex64::new(0.0, -c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// ∫ v^p e^{-iav - v²/2} dv by the composite Simpson rule on [-L, L].
    fn quad(p: i32, a: f64) -> Complex64 {
        let l = 14.0;
        let m = 40_000;
        let h = 2.0 * l / m as f64;
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..=m {
            let v = -l + i as f64 * h;
            let w = if i == 0 || i == m {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            let f = v.powi(p) * (-0.5 * v * v).exp() * Complex64::new(0.0, -a * v).exp();
            s += f * w;
        }
        s * (h / 3.0)
    }

    #[test]
    fn normalization_and_odd_vanishing() {
        assert!((gaussian_moment_i(0, 0.0) - (2.0 * PI).sqrt()).abs() < 1e-15);
        for m in 0..6 {
            assert_eq!(gaussian_moment_j(m, 0.0), Complex64::new(0.0, 0.0));
        }
        // Central moments at a = 0: (2m-1)!!
        assert!((gaussian_moment_i(3, 0.0) / (2.0 * PI).sqrt() - 15.0).abs() < 1e-12);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for a in [0.0, 0.2, 0.5, 1.3] {
            for m in 0..5 {
                let qi = quad(2 * m as i32, a);
                let gi = gaussian_moment_i(m, a);
                assert!(
                    (qi.re - gi).abs() < 1e-10 && qi.im.abs() < 1e-10,
                    "I_{m}({a})"
                );
                let qj = quad(2 * m as i32 + 1, a);
                let gj = gaussian_moment_j(m, a);
                assert!((qj - gj).norm() < 1e-10, "J_{m}({a}): {qj} vs {gj}");
            }
        }
        let v = quad(4, 0.5);
        assert!((v.re - gaussian_moment_i(2, 0.5)).abs() < 1e-10);
    }

    #[test]
    fn reduced_polys_agree_with_closed_forms() {
        let a: f64 = 0.7;
        for p in 0..9 {
            let poly = reduced_moment_poly(p);
            let val: Complex64 = poly
                .iter()
                .enumerate()
                .map(|(k, c)| c * a.powi(k as i32))
                .sum();
            let scale = (2.0 * PI).sqrt() * (-0.5 * a * a).exp();
            let want = if p % 2 == 0 {
                Complex64::new(gaussian_moment_i(p / 2, a), 0.0)
            } else {
                gaussian_moment_j(p / 2, a)
            };
            assert!((val * scale - want).norm() < 1e-13);
        }
    }
}
