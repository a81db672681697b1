//! One line per acceptance criterion; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use mlsep_verify::*;

const SEED: u64 = 20240611;

fn main() -> ExitCode {
    let mut checks = vec![
        closed_form_limits(),
        limits_at_two(),
        min_z_alpha(),
        threshold(),
        min_z_one(),
        example_one_zero(),
    ];
    match sweeps() {
        Ok(s) => {
            checks.extend(fits(&s));
            checks.extend(iteration_envelopes(&s));
        }
        Err(e) => checks.push(Check::error("7/8 sweeps", e)),
    }

    let start = Instant::now();
    checks.push(solver_vs_closed_form(SEED));
    checks.push(voc_identity());
    match registry_analyses() {
        Ok(a) => checks.extend(registry_checks(&a)),
        Err(e) => checks.push(Check::error("9c-9e registry", e)),
    }
    checks.push(horizon_scaling());
    checks.push(derivative_vs_fd(SEED));
    let took = start.elapsed();
    checks.push(Check::timing("9h property suite runtime", took, PROPERTY_BUDGET));

    for c in &checks {
        println!("{}", c.line());
    }
    let failed = checks.iter().filter(|c| !c.pass).count();
    println!(
        "\n{} checks, {} passed, {} failed",
        checks.len(),
        checks.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
