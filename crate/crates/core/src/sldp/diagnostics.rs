//! Constants controlling how far the saddle-point contribution dominates the
//! rest of the characteristic function. These are diagnostic only: the
//! approximations do not use them.

use std::f64::consts::PI;

/// `B_x = σ_x² t_x² / (t_x² + 4σ_x²)` for descents.
pub fn b_x(t: f64, sigma2: f64) -> f64 {
    sigma2 * t * t / (t * t + 4.0 * sigma2)
}

/// `C_x = t² (e^t + 1)² / ((t² + 4)(e^t - 1)²)`, which lies in `(0, 1)`.
pub fn c_x(t: f64) -> f64 {
    // (e^t + 1)/(e^t - 1) = coth(t/2)
    let coth = 1.0 / (t / 2.0).tanh();
    t * t * coth * coth / (t * t + 4.0)
}

/// `q_{a,x} = (1 + 2a²/(π² t² e^t)) / (1 + 4a²/(π² t² e^t))`.
pub fn q_ax(a: f64, t: f64) -> f64 {
    let r = a * a / (PI * PI * t * t * t.exp());
    (1.0 + 2.0 * r) / (1.0 + 4.0 * r)
}

/// [`q_ax`] at the default `a = 2π² e^{2t}`.
pub fn q_x(t: f64) -> f64 {
    q_ax(2.0 * PI * PI * (2.0 * t).exp(), t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::saddle::solve;
    use crate::Statistic;

    #[test]
    fn constants_stay_in_range() {
        for i in 1..40 {
            let x = 0.5 + i as f64 * 0.0124;
            let sp = solve(Statistic::Descents, x, 2).unwrap();
            let b = b_x(sp.t_x, sp.sigma2);
            assert!(b > 0.0 && b < sp.sigma2);
            let c = c_x(sp.t_x);
            assert!(c > 0.0 && c < 1.0, "C_x = {c}");
            let q = q_x(sp.t_x);
            assert!((0.5..1.0).contains(&q), "q = {q}");
        }
    }

    #[test]
    fn c_x_matches_exponential_form() {
        for t in [0.1, 1.0, 4.0] {
            let e = f64::exp(t);
            let direct = t * t * (e + 1.0).powi(2) / ((t * t + 4.0) * (e - 1.0).powi(2));
            assert!((c_x(t) - direct).abs() < 1e-14);
        }
        assert!((c_x(1e-4) - 1.0).abs() < 1e-8);
    }
}
