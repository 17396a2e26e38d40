use super::*;

/// Fornberg weights for the `m`-th derivative at 0 on the given offsets.
fn fd_weights(offsets: &[f64], m: usize) -> Vec<f64> {
    let n = offsets.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = offsets[0];
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = offsets[i];
        for j in 0..i {
            let c3 = offsets[i] - offsets[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Central finite difference of `f` of order `k` at `t` with step `h`.
fn central_fd(f: impl Fn(f64) -> f64, k: usize, t: f64, h: f64, half_width: i32) -> f64 {
    let offsets: Vec<f64> = (-half_width..=half_width).map(|i| i as f64).collect();
    let w = fd_weights(&offsets, k);
    let s: f64 = offsets.iter().zip(&w).map(|(o, w)| w * f(t + o * h)).sum();
    s / h.powi(k as i32)
}

fn fd_step(k: usize) -> f64 {
    [0.0, 0.02, 0.05, 0.1, 0.15, 0.2, 0.25][k]
}

#[test]
fn ld_basic_values() {
    let c = default_cgf();
    assert_eq!(c.ld(0.0), 0.0);
    let e1 = std::f64::consts::E - 1.0;
    assert!((c.ld(1.0) - e1.ln()).abs() < 1e-15);
    let closed = (0.3f64.exp_m1() / 0.3).ln();
    assert!((c.ld(0.3) - closed).abs() <= 1e-14 * closed.abs());
    // Symmetry L_D(-t) = L_D(t) - t on both branches.
    for t in [0.1, 1.0, 2.4, 2.6, 7.0, 40.0] {
        assert!(
            (c.ld(-t) - (c.ld(t) - t)).abs() < 1e-13 * (1.0 + t),
            "t={t}"
        );
    }
    // Large arguments do not overflow.
    assert!((c.ld(800.0) - (800.0 - 800f64.ln())).abs() < 1e-12);
    assert!((c.ld(-800.0) - (-(800f64.ln()))).abs() < 1e-12);
}

#[test]
fn ld_deriv_limits_at_zero() {
    let c = default_cgf();
    assert!((c.ld_deriv(1, 1e-12) - 0.5).abs() < 1e-12);
    assert!((c.ld_deriv(2, 1e-12) - 1.0 / 12.0).abs() < 1e-12);
    assert!(c.ld_deriv(3, 1e-12).abs() < 1e-12);
    assert!((c.ld_deriv(4, 0.0) - (-1.0 / 120.0)).abs() < 1e-15);
}

#[test]
fn ld_deriv_matches_finite_differences() {
    let c = default_cgf();
    for k in 1..=6 {
        for t in [0.1, 0.5, 1.0, 2.0, 5.0] {
            let fd = central_fd(|s| c.ld(s), k, t, fd_step(k), 8);
            let v = c.ld_deriv(k, t);
            let err = (v - fd).abs() / v.abs().max(1.0);
            assert!(err <= 1e-6, "k={k} t={t}: {v} vs {fd} ({err:e})");
        }
    }
}

#[test]
fn ld_deriv_order_three_at_one() {
    let c = default_cgf();
    let fd = central_fd(|s| c.ld(s), 3, 1.0, 0.1, 3);
    assert!((c.ld_deriv(3, 1.0) - fd).abs() < 1e-6);
}

#[test]
fn closed_form_and_series_agree_at_switch() {
    let c = default_cgf();
    let thr = c.config().series_threshold;
    for t in [thr, -thr] {
        for k in 0..=6 {
            let s = c.ld_series(k, t);
            let f = c.ld_closed(k, t);
            let rel = (s - f).abs() / s.abs().max(f64::MIN_POSITIVE);
            assert!(
                rel <= 1e-13,
                "k={k} t={t}: series {s} closed {f} rel {rel:e}"
            );
        }
    }
}

#[test]
fn deriv_repr_matches_finite_differences() {
    let c = default_cgf();
    for k in 1..=6 {
        let repr = CgfDerivRepr::new(k);
        for t in [0.1, 0.5, 1.0, 3.0, 10.0] {
            let fd = central_fd(|s| c.ld(s), k, t, fd_step(k), 8);
            let v = repr.eval(t);
            // Below the switch the closed form cancels badly in f64; the
            // representation itself is exact.
            let tol = if t < 0.5 { 1e-3 } else { 1e-6 };
            assert!(
                (v - fd).abs() / v.abs().max(1.0) <= tol,
                "k={k} t={t}: {v} vs {fd}"
            );
        }
    }
}

#[test]
fn convexity_on_grid() {
    let c = default_cgf();
    for i in -100..=100 {
        let t = i as f64 / 10.0;
        assert!(c.ld_deriv(2, t) > 0.0, "L_D'' at {t}");
        assert!(c.lm_deriv(2, t) > 0.0, "L_M'' at {t}");
    }
}

#[test]
fn lm_values() {
    let c = default_cgf();
    assert_eq!(c.lm(0.0), 0.0);
    assert!((c.lm_deriv(1, 1e-12) - 0.25).abs() < 1e-12);
    assert!((c.lm_deriv(2, 1e-12) - 1.0 / 36.0).abs() < 1e-12);
    // Series and quadrature agree across the switch.
    let thr = c.config().series_threshold;
    for t in [thr, -thr, 1.0, 2.0] {
        for k in 0..=6 {
            let s = c.lm_series(k, t);
            let q = c.lm_quadrature(k, t);
            assert!(
                (s - q).abs() <= 1e-13 * s.abs().max(1e-3),
                "k={k} t={t}: {s} vs {q}"
            );
        }
    }
    // L_M is the integral of L_D: check against a fine composite Simpson rule.
    for t in [3.0, 7.5, -4.0] {
        let m = 2000;
        let h = 1.0 / m as f64;
        let simpson: f64 = (0..=m)
            .map(|i| {
                let w = if i == 0 || i == m {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                w * c.ld(i as f64 * h * t)
            })
            .sum::<f64>()
            * h
            / 3.0;
        assert!((c.lm(t) - simpson).abs() < 1e-11, "t={t}");
    }
}

#[test]
fn lm_derivs_match_finite_differences() {
    let c = default_cgf();
    for k in 1..=4 {
        for t in [0.5, 3.0, 6.0] {
            let fd = central_fd(|s| c.lm(s), k, t, fd_step(k), 8);
            let v = c.lm_deriv(k, t);
            assert!((v - fd).abs() / v.abs().max(1.0) <= 1e-6, "k={k} t={t}");
        }
    }
}

#[test]
fn h_values() {
    let c = default_cgf();
    assert_eq!(c.h_deriv(0, 0.0), 0.0);
    assert!((c.h_deriv(1, 1e-12) + 0.25).abs() < 1e-12);
    assert_eq!(c.h_deriv(2, 1.0), c.ld_deriv(2, 1.0) / 2.0);
}

/// Inversion-count distribution of S_n by brute-force enumeration.
fn inversion_counts(n: usize) -> Vec<u64> {
    let mut counts = vec![0u64; n * (n - 1) / 2 + 1];
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        let inv = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| perm[i] > perm[j])
            .count();
        counts[inv] += 1;
        // next lexicographic permutation
        let Some(i) = (0..n - 1).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).unwrap();
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    counts
}

#[test]
fn ln_exact_is_the_scaled_laplace_transform() {
    let c = default_cgf();
    for n in 2..=8 {
        let counts = inversion_counts(n);
        let total: u64 = counts.iter().sum();
        for t in [-1.0, 0.5, 2.0] {
            let lhs = (n as f64 * c.ln_exact(n, t).unwrap()).exp();
            let rhs: f64 = counts
                .iter()
                .enumerate()
                .map(|(k, &m)| m as f64 / total as f64 * (t * k as f64 / n as f64).exp())
                .sum();
            assert!(
                (lhs - rhs).abs() <= 1e-12 * rhs,
                "n={n} t={t}: {lhs} vs {rhs}"
            );
        }
    }
    // n = 3, t = 1: Mahonian row [1, 2, 2, 1].
    let want = ((1.0 + 2.0 * (1.0f64 / 3.0).exp() + 2.0 * (2.0f64 / 3.0).exp() + 1f64.exp()) / 6.0)
        .ln()
        / 3.0;
    assert!((c.ln_exact(3, 1.0).unwrap() - want).abs() < 1e-14);
    assert_eq!(c.ln_exact(5, 0.0).unwrap(), 0.0);
    assert!(c.ln_exact(1, 1.0).is_err());
}

#[test]
fn ln_exact_approaches_lm() {
    let c = default_cgf();
    // The gap is dominated by H(t)/n ≈ -4.2e-3 at (100, 2).
    let diff = c.ln_exact(100, 2.0).unwrap() - c.lm(2.0);
    let h_over_n = c.h_deriv(0, 2.0) / 100.0;
    assert!(diff.abs() < 5e-3);
    assert!((diff - h_over_n).abs() < 1e-4, "{diff} vs {h_over_n}");
    let big = c.euler_maclaurin_ln(1_000_000, 2.0, 2).unwrap();
    assert!((big - c.lm(2.0)).abs() < 1e-6);
}

fn slope(ns: &[f64], ys: &[f64]) -> f64 {
    let xs: Vec<f64> = ns.iter().map(|n| n.ln()).collect();
    let ys: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let mx = xs.iter().sum::<f64>() / xs.len() as f64;
    let my = ys.iter().sum::<f64>() / ys.len() as f64;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    num / den
}

#[test]
fn euler_maclaurin_residuals() {
    let c = default_cgf();
    let ns = [32usize, 64, 128, 256];
    let res: Vec<f64> = ns
        .iter()
        .map(|&n| (c.euler_maclaurin_ln(n, 1.0, 1).unwrap() - c.ln_exact(n, 1.0).unwrap()).abs())
        .collect();
    let s = slope(&ns.map(|n| n as f64), &res);
    assert!(s <= -2.5, "slope {s}, residuals {res:?}");

    // C·n^{-3} with C fitted on {25, 50, 100}.
    let fit: Vec<f64> = [25usize, 50, 100]
        .iter()
        .map(|&n| {
            let r = (c.euler_maclaurin_ln(n, 1.0, 1).unwrap() - c.ln_exact(n, 1.0).unwrap()).abs();
            r * (n as f64).powi(3)
        })
        .collect();
    let cmax = fit.iter().cloned().fold(0.0, f64::max);
    let r50 = (c.euler_maclaurin_ln(50, 1.0, 1).unwrap() - c.ln_exact(50, 1.0).unwrap()).abs();
    assert!(r50 <= cmax * 50f64.powi(-3) * (1.0 + 1e-9));
    let r50p2 = (c.euler_maclaurin_ln(50, 1.0, 2).unwrap() - c.ln_exact(50, 1.0).unwrap()).abs();
    assert!(
        r50p2 < r50,
        "p=2 residual {r50p2} not below p=1 residual {r50}"
    );

    assert!(c.euler_maclaurin_ln(50, 0.0, 1).is_err());
}

#[test]
fn config_validation() {
    assert!(EvalConfig::default().validate().is_ok());
    let bad = EvalConfig {
        series_threshold: 7.0,
        ..EvalConfig::default()
    };
    assert!(Cgf::new(bad).is_err());
    let few = EvalConfig {
        series_terms: 5,
        ..EvalConfig::default()
    };
    assert!(Cgf::new(few).is_err());
}
