use num_traits::ToPrimitive;
use proptest::prelude::*;

use permtail::cgf::{ld_deriv, lm_deriv};
use permtail::exact::{eulerian, factorial, irwin_hall_tail, mahonian, pmf_via_fourier};
use permtail::saddle::solve;
use permtail::sldp::descents::expansion_coefficients;
use permtail::sldp::{ceil_snapped, expansion_descents, frac_ceil};
use permtail::Statistic;

fn statistic() -> impl Strategy<Value = Statistic> {
    prop_oneof![Just(Statistic::Descents), Just(Statistic::MajorIndex)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn rows_sum_to_factorial_and_are_symmetric(n in 2usize..45, stat in statistic()) {
        let d = match stat {
            Statistic::Descents => eulerian(n).unwrap(),
            Statistic::MajorIndex => mahonian(n).unwrap(),
        };
        let c = d.counts();
        prop_assert_eq!(c.len(), stat.support_max(n) + 1);
        prop_assert_eq!(c.iter().sum::<num_bigint::BigUint>(), factorial(n));
        let k = c.len() - 1;
        prop_assert!((0..=k).all(|i| c[i] == c[k - i]));
    }

    #[test]
    fn exact_tails_decrease(n in 2usize..40, stat in statistic()) {
        let d = match stat {
            Statistic::Descents => eulerian(n).unwrap(),
            Statistic::MajorIndex => mahonian(n).unwrap(),
        };
        let mut prev = 0.0;
        for m in 0..=d.support_max() as i64 {
            let t = d.tail_at(m).unwrap();
            prop_assert!(t.log_value <= 0.0 && t.log_value <= prev);
            prop_assert!(&t.numerator <= d.total());
            prev = t.log_value;
        }
        prop_assert!(d.tail_at(d.support_max() as i64 + 1).is_err());
    }

    #[test]
    fn tanny_identity(n in 2usize..=12, m in -2i64..14) {
        let e = eulerian(n).unwrap();
        let exact = if m > (n - 1) as i64 { 0.0 } else { e.tail_at(m).unwrap().probability() };
        prop_assert!((irwin_hall_tail(n, m).unwrap() - exact).abs() <= 1e-9);
    }

    #[test]
    fn fourier_inverts_mahonian(n in 3usize..=30) {
        let f = pmf_via_fourier(n, 0.0).unwrap();
        let p = mahonian(n).unwrap().probabilities();
        let err = f.pmf.iter().zip(&p).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        prop_assert!(err <= 1e-10);
        prop_assert!(f.max_negative_mass.is_none());
    }

    #[test]
    fn fractional_part_in_unit_interval(y in -1e6f64..1e6) {
        let f = frac_ceil(y).value();
        prop_assert!((0.0..1.0).contains(&f));
        prop_assert!((ceil_snapped(y) - y - f).abs() <= 1e-9 * y.abs().max(1.0));
    }

    #[test]
    fn saddle_solves_dual_equation(u in 0.01f64..0.99, stat in statistic()) {
        let (lo, hi) = stat.admissible();
        let x = lo + u * (hi - lo);
        let sp = solve(stat, x, 4).unwrap();
        let d1 = match stat {
            Statistic::Descents => ld_deriv(1, sp.t_x),
            Statistic::MajorIndex => lm_deriv(1, sp.t_x),
        };
        prop_assert!((d1 - x).abs() <= 1e-12);
        prop_assert!(sp.t_x > 0.0 && sp.sigma2 > 0.0 && sp.rate > 0.0);
    }

    #[test]
    fn rate_is_increasing(u in 0.02f64..0.97, stat in statistic()) {
        let (lo, hi) = stat.admissible();
        let x = lo + u * (hi - lo);
        let y = x + 0.01 * (hi - lo);
        let (a, b) = (solve(stat, x, 2).unwrap(), solve(stat, y, 2).unwrap());
        prop_assert!(b.t_x > a.t_x);
        prop_assert!(b.rate > a.rate);
    }

    #[test]
    fn descents_bracket_is_one_plus_o_of_one_over_n(u in 0.05f64..0.95, n in 1000usize..50000) {
        let x = 0.5 + u * 0.5;
        let sp = solve(Statistic::Descents, x, 8).unwrap();
        // d_{n,1} depends on n only through {nx} ∈ [0, 1).
        let sup = (0..=20)
            .map(|i| expansion_coefficients(&sp, i as f64 / 20.0, 1).unwrap().coefficients[0].abs())
            .fold(0.0, f64::max);
        let b = expansion_descents(&sp, n, 2).unwrap().bracket();
        prop_assert!((b - 1.0).abs() * n as f64 <= 1.1 * sup + 1.0);
    }

    #[test]
    fn probabilities_match_ratios(n in 2usize..25) {
        let d = eulerian(n).unwrap();
        let total = factorial(n).to_f64().unwrap();
        for (c, p) in d.counts().iter().zip(d.probabilities()) {
            prop_assert!((c.to_f64().unwrap() / total - p).abs() <= 1e-16);
        }
    }
}
