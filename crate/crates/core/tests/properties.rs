use mlsep::bounds::{horizon_tstar, linear_envelope, Condition};
use mlsep::fode::{linear_closed_form, solve_ivp, IVProblem};
use mlsep::gamma::rgamma;
use mlsep::ml::{ml_deriv_neg_axis, ml_eval, ml_neg_axis, MlAccuracy, MlQuery};
use mlsep::par::Execution;
use mlsep::zeros::{smallest_zero, sweep_with, Beta, NewtonOptions};
use proptest::prelude::*;

fn acc() -> MlAccuracy {
    MlAccuracy::default()
}

fn e(alpha: f64, beta: f64, x: f64) -> f64 {
    ml_eval(&MlQuery::new(alpha, beta, x).unwrap(), &acc()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn recurrence_identity(alpha in 1.0f64..=2.0, beta in 0.5f64..2.5, x in -60.0f64..0.0) {
        // E_{a,b}(x) = 1/Gamma(b) + x E_{a,a+b}(x)
        let lhs = e(alpha, beta, x);
        let rhs = rgamma(beta) + x * e(alpha, alpha + beta, x);
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + x.abs()), "{lhs} vs {rhs}");
    }

    #[test]
    fn derivative_matches_finite_differences(alpha in 1.01f64..2.0, pick in 0u8..4, b in 0.5f64..2.5, z in 0.05f64..12.0) {
        let beta = [alpha, 1.0, 2.0, b][pick as usize];
        let d = ml_deriv_neg_axis(alpha, beta, z, &acc()).unwrap();
        let h = 1e-3 * z.max(1.0);
        let f = |x: f64| ml_neg_axis(alpha, beta, x, &acc()).unwrap();
        let fd = (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h);
        prop_assert!((d - fd).abs() <= 1e-6 * d.abs().max(1e-2), "d {d} fd {fd}");
    }

    #[test]
    fn horizon_scales_with_lipschitz(alpha in 1.05f64..2.0, l in 0.1f64..10.0, c in 0.1f64..10.0) {
        let base = horizon_tstar(alpha, l, &Condition::ALL).unwrap();
        let scaled = horizon_tstar(alpha, c * l, &Condition::ALL).unwrap();
        let want = base.t_star / c.powf(1.0 / alpha);
        prop_assert!((scaled.t_star - want).abs() <= 4.0 * f64::EPSILON * want);
        prop_assert_eq!(base.binding, scaled.binding);
    }

    #[test]
    fn envelope_is_ordered(lam in -1.5f64..-0.2, mu in 0.0f64..0.2, d0 in 0.0f64..2.0, d1 in 0.0f64..2.0) {
        let times: Vec<f64> = (0..=20).map(|i| 0.05 * i as f64).collect();
        let env = linear_envelope(1.5, |t: f64| lam + mu * (3.0 * t).sin(), d0, d1, &times, &acc()).unwrap();
        for w in env.coeffs.windows(2) {
            prop_assert!(w[1].a_lower <= w[0].a_lower && w[1].a_upper >= w[0].a_upper);
        }
        for (lo, hi) in env.lower.iter().zip(&env.upper) {
            prop_assert!(lo <= hi);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn smallest_zero_is_a_zero_and_first(alpha in 1.05f64..=2.0, unit_beta in any::<bool>()) {
        let beta = if unit_beta { 1.0 } else { alpha };
        let r = smallest_zero(alpha, beta, &NewtonOptions::default()).unwrap();
        prop_assert!(r.converged && r.z_min > 0.0);
        prop_assert!(ml_neg_axis(alpha, beta, r.z_min, &acc()).unwrap().abs() <= 1e-10);
        // independent coarse scan: positive on (0, z_min)
        let n = 400;
        for i in 0..n {
            let z = r.z_min * i as f64 / n as f64;
            prop_assert!(ml_neg_axis(alpha, beta, z, &acc()).unwrap() > 0.0, "sign change before {} at {z}", r.z_min);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn solver_matches_closed_form(alpha in 1.05f64..1.95, lambda in -2.0f64..0.0, y0 in -1.0f64..1.0, y1 in -1.0f64..1.0) {
        let p = IVProblem::linear(alpha, lambda, y0, y1, 2.0).unwrap();
        let sol = solve_ivp(&p, 4096).unwrap();
        for (&t, &y) in sol.times.iter().zip(&sol.values) {
            let exact = linear_closed_form(alpha, lambda, y0, y1, t, &acc()).unwrap();
            prop_assert!((y - exact).abs() <= 1e-3, "t {t}: {y} vs {exact}");
        }
    }

    #[test]
    fn initial_conditions_are_reproduced(alpha in 1.1f64..1.9, y0 in -1.0f64..1.0, y1 in -1.0f64..1.0) {
        let p = IVProblem::new(alpha, |_, y: f64| -y.sin(), y0, y1, 1.0, 1.0).unwrap();
        let slope_err = |n: usize| {
            let s = solve_ivp(&p, n).unwrap();
            prop_assert_eq!(s.values[0], y0);
            Ok(((s.values[1] - s.values[0]) / s.step - y1).abs())
        };
        let (coarse, fine) = (slope_err(256)?, slope_err(512)?);
        prop_assert!(fine < coarse || fine < 1e-12, "{coarse} -> {fine}");
    }
}

#[test]
fn sweep_does_not_depend_on_execution() {
    let grid: Vec<f64> = (0..24).map(|i| 1.01 + 0.04 * i as f64).collect();
    let opts = NewtonOptions::default();
    for beta in [Beta::Alpha, Beta::Fixed(1.0), Beta::Fixed(2.0)] {
        let seq = sweep_with(Execution::Sequential, beta, &grid, &opts);
        let par = sweep_with(Execution::Parallel, beta, &grid, &opts);
        assert_eq!(seq.len(), par.len());
        for (a, b) in seq.iter().zip(&par) {
            // NaN-aware bitwise comparison
            assert_eq!(a.z_min.to_bits(), b.z_min.to_bits());
            assert_eq!(
                (a.iterations, a.converged, a.no_zero),
                (b.iterations, b.converged, b.no_zero)
            );
        }
    }
}
