//! The three evaluation regimes agree where their ranges overlap.

use mlsep::ml::{ml_eval_in, MlAccuracy, MlQuery, Regime};

const ALPHAS: [f64; 6] = [1.001, 1.2, 1.5, 1.6, 1.9, 2.0];
const BETAS: [f64; 4] = [1.0, 2.0, 1.5, 0.7];

fn eval(regime: Regime, a: f64, b: f64, x: f64) -> f64 {
    ml_eval_in(regime, &MlQuery::new(a, b, x).unwrap(), &MlAccuracy::default()).unwrap()
}

#[test]
fn series_and_contour_agree_near_the_crossover() {
    for a in ALPHAS {
        for b in BETAS.iter().copied().chain([a]) {
            for x in [-0.5, -2.0, -4.0, -4.99, -5.0, 3.0] {
                let s = eval(Regime::Series, a, b, x);
                let c = eval(Regime::Contour, a, b, x);
                assert!(
                    (s - c).abs() <= 1e-12 * s.abs().max(1.0),
                    "a {a} b {b} x {x}: {s} vs {c}"
                );
            }
        }
    }
}

#[test]
fn asymptotic_and_contour_agree_past_the_threshold() {
    let mut used = 0;
    for a in ALPHAS.into_iter().filter(|&a| a < 2.0) {
        for b in BETAS.iter().copied().chain([a]) {
            for x in [-50.0, -80.0, -200.0, -1000.0] {
                // the asymptotic regime declines when its remainder is too large
                let Ok(v) = ml_eval_in(
                    Regime::Asymptotic,
                    &MlQuery::new(a, b, x).unwrap(),
                    &MlAccuracy::default(),
                ) else {
                    continue;
                };
                used += 1;
                let c = eval(Regime::Contour, a, b, x);
                assert!((v - c).abs() <= 1e-12, "a {a} b {b} x {x}: {v} vs {c}");
            }
        }
    }
    assert!(used > 20, "asymptotic regime used only {used} times");
}
