//! Headline constants of the zero study and the default asymptote fits.

use std::f64::consts::PI;

use crate::ml::MlAccuracy;
use crate::zeros::{
    alpha_grid, fit_asymptote, has_real_zero, locate_minimum, smallest_zero, sweep, threshold_alpha0, AsymptoteFit,
    Beta, FitRegime, NewtonOptions, ZeroError, ZeroRecord,
};

/// Fit window for `alpha -> 1+`.
pub const WINDOW_TO_1: (f64, f64) = (1.001, 1.05);
/// Fit window for `alpha -> 2-` with `beta = alpha` and `beta = 1`.
pub const WINDOW_TO_2: (f64, f64) = (1.95, 1.999);
/// Fit window for `alpha -> 2-` with `beta = 2`. The curvature of `Z_2` near
/// 2 biases the slope on the wider window by more than 0.1.
pub const WINDOW_TO_2_BETA2: (f64, f64) = (1.99, 1.999);
/// Width of the fit window `(alpha0, alpha0 + w]` for `beta = 2`.
pub const WINDOW_ALPHA0_WIDTH: f64 = 0.01;
/// Points in the dedicated grid just above `alpha0`.
pub const ALPHA0_GRID_POINTS: usize = 40;

/// Grid of the main sweeps.
pub fn main_grid() -> Vec<f64> {
    alpha_grid(1.001, 2.0, 1e-3)
}

/// `alpha0 + k * width / n`, `k = 1..=n`.
pub fn alpha0_grid(alpha0: f64) -> Vec<f64> {
    let h = WINDOW_ALPHA0_WIDTH / ALPHA0_GRID_POINTS as f64;
    (1..=ALPHA0_GRID_POINTS).map(|k| alpha0 + k as f64 * h).collect()
}

/// `Z_2(alpha0)`: the location of the tangential zero at the threshold, taken
/// as the minimum location just above it.
pub fn zero_at_threshold(alpha0: f64, acc: &MlAccuracy) -> Result<f64, ZeroError> {
    Ok(has_real_zero(alpha0 + 1e-9, 2.0, acc)?.min_location)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstantRow {
    pub name: &'static str,
    pub reference: f64,
    pub computed: f64,
    pub tol: f64,
}

impl ConstantRow {
    pub fn diff(&self) -> f64 {
        (self.computed - self.reference).abs()
    }

    pub fn ok(&self, tol_scale: f64) -> bool {
        self.diff() <= self.tol * tol_scale
    }
}

pub fn constants(opts: &NewtonOptions) -> Result<Vec<ConstantRow>, ZeroError> {
    let acc = &opts.ml;
    let min_a = locate_minimum(Beta::Alpha, 1.001, 2.0, 1e-3, 1e-5, opts)?;
    let min_1 = locate_minimum(Beta::Fixed(1.0), 1.001, 2.0, 1e-3, 1e-5, opts)?;
    let alpha0 = threshold_alpha0(1e-6, acc)?;
    let z_a0 = zero_at_threshold(alpha0, acc)?;
    let z1_2 = smallest_zero(2.0, 1.0, opts)?.z_min;
    let z2_2 = smallest_zero(2.0, 2.0, opts)?.z_min;
    let row = |name, reference, computed, tol| ConstantRow {
        name,
        reference,
        computed,
        tol,
    };
    Ok(vec![
        row("min Z_alpha(alpha)", 2.9378538, min_a.z_min, 1e-5),
        row("argmin Z_alpha(alpha)", 1.586, min_a.alpha, 2e-3),
        row("alpha0", 1.599115206, alpha0, 1e-6),
        row("Z_2(alpha0)", 5.21066, z_a0, 1e-3),
        row("min Z_1(alpha)", 1.559, min_1.z_min, 2e-3),
        row("argmin Z_1(alpha)", 1.833, min_1.alpha, 2e-3),
        row("Z_1(2)", PI / 2.0, z1_2, 1e-10),
        row("Z_2(2)", PI, z2_2, 1e-10),
    ])
}

/// Sweep and both asymptote fits for `beta = alpha` or `beta = 1` on the main grid.
#[derive(Debug, Clone)]
pub struct SweepFits {
    pub records: Vec<ZeroRecord>,
    pub to_1: AsymptoteFit,
    pub to_2: AsymptoteFit,
}

pub fn sweep_and_fit(beta: Beta, opts: &NewtonOptions) -> Result<SweepFits, ZeroError> {
    let records = sweep(beta, &main_grid(), opts);
    let z2 = beta
        .zero_at_two()
        .ok_or(ZeroError::Options(format!("no exact limit at 2 for beta = {beta}")))?;
    let to_1 = fit_asymptote(&records, FitRegime::AlphaTo1, WINDOW_TO_1)?;
    let to_2 = fit_asymptote(&records, FitRegime::AlphaTo2 { z_at_2: z2 }, WINDOW_TO_2)?;
    Ok(SweepFits { records, to_1, to_2 })
}

/// `beta = 2`: sweep from the threshold to 2 with both fits.
#[derive(Debug, Clone)]
pub struct Beta2Fits {
    pub alpha0: f64,
    pub z_at_alpha0: f64,
    pub records: Vec<ZeroRecord>,
    pub to_2: AsymptoteFit,
    pub to_alpha0: AsymptoteFit,
}

pub fn beta2_fits(opts: &NewtonOptions) -> Result<Beta2Fits, ZeroError> {
    let acc = &opts.ml;
    let alpha0 = threshold_alpha0(1e-9, acc)?;
    let z_at_alpha0 = zero_at_threshold(alpha0, acc)?;
    let mut grid = alpha0_grid(alpha0);
    let start = grid.last().copied().unwrap_or(alpha0);
    grid.extend(alpha_grid(1.61, 2.0, 1e-3).into_iter().filter(|&a| a > start));
    let records = sweep(Beta::Fixed(2.0), &grid, opts);
    let to_2 = fit_asymptote(&records, FitRegime::AlphaTo2 { z_at_2: PI }, WINDOW_TO_2_BETA2)?;
    let to_alpha0 = fit_asymptote(
        &records,
        FitRegime::AlphaToAlpha0 { alpha0, z_at_alpha0 },
        (alpha0, alpha0 + WINDOW_ALPHA0_WIDTH),
    )?;
    Ok(Beta2Fits {
        alpha0,
        z_at_alpha0,
        records,
        to_2,
        to_alpha0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grids() {
        let g = main_grid();
        assert_eq!(g.len(), 1000);
        let a = alpha0_grid(1.6);
        assert_eq!(a.len(), ALPHA0_GRID_POINTS);
        assert!((a[ALPHA0_GRID_POINTS - 1] - 1.61).abs() < 1e-12);
    }

    #[test]
    fn row_tolerance_scales() {
        let r = ConstantRow {
            name: "x",
            reference: 1.0,
            computed: 1.5,
            tol: 0.4,
        };
        assert!(!r.ok(1.0) && r.ok(2.0));
    }
}
