//! `ml_eval` against high-precision reference values (see `oracle/ml_reference.py`).

use mlsep::ml::{ml_eval, MlAccuracy, MlQuery};

const TOL: f64 = 1e-12;

#[test]
fn matches_reference_values() {
    let data = include_str!("data/ml_reference.csv");
    let acc = MlAccuracy::default();
    let mut failures = Vec::new();
    let mut worst: f64 = 0.0;
    for line in data.lines().skip(1) {
        let f: Vec<f64> = line.split(',').map(|s| s.parse().unwrap()).collect();
        let (a, b, x, want) = (f[0], f[1], f[2], f[3]);
        match ml_eval(&MlQuery::new(a, b, x).unwrap(), &acc) {
            Ok(got) => {
                let err = (got - want).abs() / want.abs().max(1.0);
                worst = worst.max(err);
                if err > TOL {
                    failures.push(format!("{line}: got {got:e}, err {err:.1e}"));
                }
            }
            Err(e) => failures.push(format!("{line}: {e}")),
        }
    }
    assert!(
        failures.is_empty(),
        "{} failures:\n{}",
        failures.len(),
        failures.join("\n")
    );
    println!("worst error {worst:.2e}");
}
