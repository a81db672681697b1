//! Smallest positive zeros `Z_beta(alpha)` of `z -> E_{alpha,beta}(-z^alpha)`.
//!
//! Zeros are found by Newton's method started at `z0 = pi/2`, with the
//! derivative from the Mittag-Leffler recurrence. Every converged zero is
//! checked for minimality by a sign scan of `(0, z)`; if Newton fails or
//! lands on a later zero, a bracketing scan on `(0, 20]` takes over.
//!
//! For `beta = 2` real zeros exist only above a threshold order `alpha_0`;
//! [`has_real_zero`] decides this from the sign of the first local minimum.

use std::f64::consts::PI;

use thiserror::Error;

use crate::ml::{ml_deriv_neg_axis, ml_neg_axis, MlAccuracy, MlError};
use crate::optimize::{bisect, golden_min};
use crate::par::Execution;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ZeroError {
    #[error(transparent)]
    Ml(#[from] MlError),
    #[error("no zero of E_{{{alpha},{beta}}}(-z^alpha) on (0, {scan_max}]")]
    NoZero { alpha: f64, beta: f64, scan_max: f64 },
    #[error("Newton iteration did not converge for alpha = {alpha}, beta = {beta}")]
    NotConverged { alpha: f64, beta: f64 },
    #[error("no local minimum of E_{{{alpha},{beta}}}(-z^alpha) on (0, {scan_max}]")]
    Scan { alpha: f64, beta: f64, scan_max: f64 },
    #[error("threshold bracket [{lo}, {hi}] does not straddle the zero/no-zero transition")]
    Bracket { lo: f64, hi: f64 },
    #[error("asymptote fit needs at least {needed} converged records in the window, got {got}")]
    Fit { needed: usize, got: usize },
    #[error("invalid option: {0}")]
    Options(String),
}

/// Second Mittag-Leffler parameter, either fixed or tied to `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Beta {
    /// `beta = alpha`
    Alpha,
    Fixed(f64),
}

impl Beta {
    pub fn resolve(self, alpha: f64) -> f64 {
        match self {
            Beta::Alpha => alpha,
            Beta::Fixed(b) => b,
        }
    }

    /// Exact limit `Z_beta(2)`: pi for `beta = alpha` and `beta = 2`,
    /// pi/2 for `beta = 1`.
    pub fn zero_at_two(self) -> Option<f64> {
        match self {
            Beta::Alpha => Some(PI),
            Beta::Fixed(2.0) => Some(PI),
            Beta::Fixed(1.0) => Some(PI / 2.0),
            Beta::Fixed(_) => None,
        }
    }
}

impl std::fmt::Display for Beta {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Beta::Alpha => write!(f, "alpha"),
            Beta::Fixed(b) => write!(f, "{b}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NewtonOptions {
    pub z0: f64,
    /// Stop once `|z_{n+1} - z_n| <= abs_tol`.
    pub abs_tol: f64,
    pub max_iter: u32,
    pub bracket_fallback: bool,
    /// Step of the minimality scan over `(0, z_min)`; `None` skips it.
    pub verify_step: Option<f64>,
    pub ml: MlAccuracy,
}

impl Default for NewtonOptions {
    fn default() -> Self {
        Self {
            z0: PI / 2.0,
            abs_tol: 1e-12,
            max_iter: 60,
            bracket_fallback: true,
            verify_step: Some(1e-3),
            ml: MlAccuracy::default(),
        }
    }
}

impl NewtonOptions {
    pub fn validate(&self) -> Result<(), ZeroError> {
        if !(self.z0 > 0.0 && self.z0.is_finite()) {
            return Err(ZeroError::Options(format!("z0 = {} must be positive", self.z0)));
        }
        if !(self.abs_tol > 0.0) {
            return Err(ZeroError::Options(format!(
                "abs_tol = {} must be positive",
                self.abs_tol
            )));
        }
        if self.max_iter < 1 {
            return Err(ZeroError::Options("max_iter must be at least 1".into()));
        }
        if let Some(h) = self.verify_step {
            if !(h > 0.0) {
                return Err(ZeroError::Options(format!("verify_step = {h} must be positive")));
            }
        }
        Ok(())
    }
}

/// Outcome of a smallest-zero search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroRecord {
    pub alpha: f64,
    pub beta: f64,
    /// `Z_beta(alpha)`; `NaN` for flagged records.
    pub z_min: f64,
    /// Newton steps; includes polishing steps after a fallback scan.
    pub iterations: u32,
    pub converged: bool,
    /// `|E_{alpha,beta}(-z_min^alpha)|`.
    pub residual: f64,
    /// Set on sweep records where no zero exists in the scan range.
    pub no_zero: bool,
    /// The bracketing fallback produced the zero.
    pub used_fallback: bool,
}

impl ZeroRecord {
    fn flagged(alpha: f64, beta: f64, no_zero: bool) -> Self {
        Self {
            alpha,
            beta,
            z_min: f64::NAN,
            iterations: 0,
            converged: false,
            residual: f64::NAN,
            no_zero,
            used_fallback: false,
        }
    }
}

/// Upper end of the fallback sign-change scan.
pub const FALLBACK_SCAN_MAX: f64 = 20.0;
const FALLBACK_SCAN_STEP: f64 = 0.05;
/// Upper end of the local-minimum scan used by [`has_real_zero`].
pub const MINIMUM_SCAN_MAX: f64 = 40.0;

fn check_alpha(alpha: f64) -> Result<(), ZeroError> {
    if !(alpha > 1.0 && alpha <= 2.0) {
        return Err(ZeroError::Options(format!("alpha = {alpha} not in (1, 2]")));
    }
    Ok(())
}

enum NewtonOutcome {
    Converged { z: f64, iterations: u32 },
    Failed,
}

fn newton(alpha: f64, beta: f64, z0: f64, opts: &NewtonOptions, lo: f64, hi: f64) -> Result<NewtonOutcome, MlError> {
    let mut z = z0;
    for it in 1..=opts.max_iter {
        let f = ml_neg_axis(alpha, beta, z, &opts.ml)?;
        let df = ml_deriv_neg_axis(alpha, beta, z, &opts.ml)?;
        if df == 0.0 || !df.is_finite() {
            return Ok(NewtonOutcome::Failed);
        }
        let step = f / df;
        let next = z - step;
        if !(next > lo && next < hi) || !next.is_finite() {
            return Ok(NewtonOutcome::Failed);
        }
        z = next;
        if step.abs() <= opts.abs_tol {
            return Ok(NewtonOutcome::Converged { z, iterations: it });
        }
    }
    Ok(NewtonOutcome::Failed)
}

/// First sign change of `E_{alpha,beta}(-z^alpha)` on `(0, upto]` with the given
/// step, as a bracket `(a, b)`.
fn first_sign_change(
    alpha: f64,
    beta: f64,
    upto: f64,
    step: f64,
    acc: &MlAccuracy,
) -> Result<Option<(f64, f64)>, MlError> {
    let n = (upto / step).floor() as usize;
    let mut prev = ml_neg_axis(alpha, beta, 0.0, acc)?;
    let mut prev_z = 0.0;
    for i in 1..=n {
        let z = i as f64 * step;
        let v = ml_neg_axis(alpha, beta, z, acc)?;
        if v == 0.0 || (v < 0.0) != (prev < 0.0) {
            return Ok(Some((prev_z, z)));
        }
        prev = v;
        prev_z = z;
    }
    Ok(None)
}

/// Coarse scan for the first zero, also catching a pair of nearby zeros that
/// straddles a sampled local minimum.
fn fallback_bracket(alpha: f64, beta: f64, acc: &MlAccuracy) -> Result<Option<(f64, f64)>, MlError> {
    let n = (FALLBACK_SCAN_MAX / FALLBACK_SCAN_STEP).round() as usize;
    let f = |z: f64| ml_neg_axis(alpha, beta, z, acc);
    let mut vals = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let z = i as f64 * FALLBACK_SCAN_STEP;
        let v = f(z)?;
        if i > 0 {
            let (pz, pv) = (z - FALLBACK_SCAN_STEP, vals[i - 1]);
            if v == 0.0 || (v < 0.0) != (pv < 0.0) {
                return Ok(Some((pz, z)));
            }
        }
        vals.push(v);
        // a sampled local minimum above zero may hide two close zeros
        if i >= 2 && vals[i - 1] < vals[i - 2] && vals[i - 1] <= v && vals[i - 1] > 0.0 {
            let a = (i - 2) as f64 * FALLBACK_SCAN_STEP;
            let b = z;
            let (zm, vm) = golden_min(a, b, 1e-9, f)?;
            if vm <= 0.0 {
                return Ok(Some((a, zm)));
            }
        }
    }
    Ok(None)
}

/// `Z_beta(alpha)`, the smallest positive zero of `z -> E_{alpha,beta}(-z^alpha)`.
pub fn smallest_zero(alpha: f64, beta: f64, opts: &NewtonOptions) -> Result<ZeroRecord, ZeroError> {
    check_alpha(alpha)?;
    opts.validate()?;
    let acc = &opts.ml;

    if let NewtonOutcome::Converged { z, iterations } = newton(alpha, beta, opts.z0, opts, 0.0, MINIMUM_SCAN_MAX)? {
        let minimal = match opts.verify_step {
            Some(h) => first_sign_change(alpha, beta, z - 1e-6, h, acc)?.is_none(),
            None => true,
        };
        if minimal || !opts.bracket_fallback {
            let residual = ml_neg_axis(alpha, beta, z, acc)?.abs();
            return Ok(ZeroRecord {
                alpha,
                beta,
                z_min: z,
                iterations,
                converged: minimal,
                residual,
                no_zero: false,
                used_fallback: false,
            });
        }
    } else if !opts.bracket_fallback {
        return Err(ZeroError::NotConverged { alpha, beta });
    }

    let (a, b) = fallback_bracket(alpha, beta, acc)?.ok_or(ZeroError::NoZero {
        alpha,
        beta,
        scan_max: FALLBACK_SCAN_MAX,
    })?;
    let f = |z: f64| ml_neg_axis(alpha, beta, z, acc);
    let rough = bisect(a, b, 1e-3, f)?;
    let (z, iterations, converged) = match newton(alpha, beta, rough, opts, a, b)? {
        NewtonOutcome::Converged { z, iterations } => (z, iterations, true),
        // tangential pair of zeros: Newton may stall, finish by bisection
        NewtonOutcome::Failed => (bisect(a, b, opts.abs_tol, f)?, opts.max_iter, true),
    };
    let residual = f(z)?.abs();
    Ok(ZeroRecord {
        alpha,
        beta,
        z_min: z,
        iterations,
        converged,
        residual,
        no_zero: false,
        used_fallback: true,
    })
}

/// First local minimum of `z -> E_{alpha,beta}(-z^alpha)` and whether it reaches zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimumReport {
    pub has_zero: bool,
    pub min_location: f64,
    pub min_value: f64,
}

const MIN_SCAN_STEP: f64 = 0.05;

/// Locate the first local minimum on `(0, 40]` (coarse scan, golden-section
/// refinement, then bisection on the sign of the derivative to `1e-10`) and
/// report whether its value is `<= 0`.
pub fn has_real_zero(alpha: f64, beta: f64, acc: &MlAccuracy) -> Result<MinimumReport, ZeroError> {
    check_alpha(alpha)?;
    let f = |z: f64| ml_neg_axis(alpha, beta, z, acc);
    let n = (MINIMUM_SCAN_MAX / MIN_SCAN_STEP).round() as usize;
    let mut v_prev2 = f(0.0)?;
    let mut v_prev = f(MIN_SCAN_STEP)?;
    for i in 2..=n {
        let z = i as f64 * MIN_SCAN_STEP;
        let v = f(z)?;
        if v_prev < v_prev2 && v_prev <= v {
            let a = z - 2.0 * MIN_SCAN_STEP;
            let (zg, _) = golden_min(a, z, 1e-6, f)?;
            let df = |s: f64| ml_deriv_neg_axis(alpha, beta, s, acc);
            let (lo, hi) = (zg - 2e-6, zg + 2e-6);
            let z_min = if df(lo)? < 0.0 && df(hi)? > 0.0 {
                bisect(lo, hi, 1e-10, df)?
            } else {
                zg
            };
            let min_value = f(z_min)?;
            return Ok(MinimumReport {
                has_zero: min_value <= 0.0,
                min_location: z_min,
                min_value,
            });
        }
        v_prev2 = v_prev;
        v_prev = v;
    }
    Err(ZeroError::Scan {
        alpha,
        beta,
        scan_max: MINIMUM_SCAN_MAX,
    })
}

fn zero_flag(alpha: f64, beta: f64, acc: &MlAccuracy) -> Result<bool, ZeroError> {
    match has_real_zero(alpha, beta, acc) {
        Ok(r) => Ok(r.has_zero),
        // monotone on the scan range: no interior minimum, no zero
        Err(ZeroError::Scan { .. }) => Ok(false),
        Err(e) => Err(e),
    }
}

/// Bisection on `alpha` for the threshold `alpha_0` where `E_{alpha,2}(-z^alpha)`
/// acquires real zeros, starting from the bracket `[1.59, 1.61]`.
pub fn threshold_alpha0(tol: f64, acc: &MlAccuracy) -> Result<f64, ZeroError> {
    threshold_alpha0_in(1.59, 1.61, tol, acc)
}

pub fn threshold_alpha0_in(lo: f64, hi: f64, tol: f64, acc: &MlAccuracy) -> Result<f64, ZeroError> {
    if !(tol >= 1e-10) {
        return Err(ZeroError::Options(format!("tol = {tol} below 1e-10")));
    }
    let (mut a, mut b) = (lo, hi);
    let fa = zero_flag(a, 2.0, acc)?;
    let fb = zero_flag(b, 2.0, acc)?;
    if fa || !fb {
        return Err(ZeroError::Bracket { lo, hi });
    }
    // each step costs one minimum search, so resolve well past `tol`
    let target = (0.01 * tol).max(1e-11);
    while 0.5 * (b - a) > target {
        let m = 0.5 * (a + b);
        if zero_flag(m, 2.0, acc)? {
            b = m;
        } else {
            a = m;
        }
    }
    Ok(0.5 * (a + b))
}

/// One record per grid point, in grid order. For `beta = 2` points without a
/// real zero are flagged `no_zero`; other failures are flagged unconverged.
pub fn sweep(beta: Beta, alpha_grid: &[f64], opts: &NewtonOptions) -> Vec<ZeroRecord> {
    sweep_with(Execution::default(), beta, alpha_grid, opts)
}

pub fn sweep_with(exec: Execution, beta: Beta, alpha_grid: &[f64], opts: &NewtonOptions) -> Vec<ZeroRecord> {
    exec.map(alpha_grid, |&alpha| sweep_point(alpha, beta.resolve(alpha), opts))
}

fn sweep_point(alpha: f64, beta: f64, opts: &NewtonOptions) -> ZeroRecord {
    if beta == 2.0 {
        match zero_flag(alpha, beta, &opts.ml) {
            Ok(false) => return ZeroRecord::flagged(alpha, beta, true),
            Ok(true) => {}
            Err(_) => return ZeroRecord::flagged(alpha, beta, false),
        }
    }
    match smallest_zero(alpha, beta, opts) {
        Ok(r) => r,
        Err(ZeroError::NoZero { .. }) => ZeroRecord::flagged(alpha, beta, true),
        Err(_) => ZeroRecord::flagged(alpha, beta, false),
    }
}

/// `n + 1` equispaced points from `lo` to `hi` inclusive, computed as
/// `lo + i * step` so grids are reproducible.
pub fn alpha_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|i| lo + i as f64 * step).collect()
}

/// Minimum of `Z_beta(alpha)` over an interval: a coarse sweep, then a fine
/// sweep around the coarse argmin.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroMinimum {
    pub alpha: f64,
    pub z_min: f64,
}

pub fn locate_minimum(
    beta: Beta,
    lo: f64,
    hi: f64,
    coarse_step: f64,
    fine_step: f64,
    opts: &NewtonOptions,
) -> Result<ZeroMinimum, ZeroError> {
    let coarse = sweep(beta, &alpha_grid(lo, hi, coarse_step), opts);
    let best = argmin(&coarse).ok_or(ZeroError::Fit { needed: 1, got: 0 })?;
    let f_lo = (best.alpha - coarse_step).max(lo);
    let f_hi = (best.alpha + coarse_step).min(hi);
    let fine = sweep(beta, &alpha_grid(f_lo, f_hi, fine_step), opts);
    let best = argmin(&fine).unwrap_or(best);
    Ok(ZeroMinimum {
        alpha: best.alpha,
        z_min: best.z_min,
    })
}

fn argmin(records: &[ZeroRecord]) -> Option<ZeroRecord> {
    records
        .iter()
        .filter(|r| r.converged)
        .copied()
        .min_by(|a, b| a.z_min.total_cmp(&b.z_min))
}

// ---------------------------------------------------------------------------
// Asymptote fits

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FitRegime {
    /// `Z ~ c ln(alpha - 1) + d`
    AlphaTo1,
    /// `Z ~ z_at_2 + c (2 - alpha)` with the limit held fixed
    AlphaTo2 { z_at_2: f64 },
    /// `Z ~ z_at_alpha0 + c (alpha - alpha0)^b`, fitted in log-log form
    AlphaToAlpha0 { alpha0: f64, z_at_alpha0: f64 },
}

impl FitRegime {
    pub fn name(&self) -> &'static str {
        match self {
            FitRegime::AlphaTo1 => "alpha_to_1",
            FitRegime::AlphaTo2 { .. } => "alpha_to_2",
            FitRegime::AlphaToAlpha0 { .. } => "alpha_to_alpha0",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoteFit {
    pub regime: FitRegime,
    pub coefficients: Vec<(&'static str, f64)>,
    pub fit_window: (f64, f64),
    pub rms_residual: f64,
    pub points: usize,
}

impl AsymptoteFit {
    pub fn coefficient(&self, name: &str) -> Option<f64> {
        self.coefficients.iter().find(|(n, _)| *n == name).map(|&(_, v)| v)
    }

    /// Model value at `alpha`.
    pub fn eval(&self, alpha: f64) -> f64 {
        let c = self.coefficient("c").unwrap_or(f64::NAN);
        match self.regime {
            FitRegime::AlphaTo1 => c * (alpha - 1.0).ln() + self.coefficient("d").unwrap_or(f64::NAN),
            FitRegime::AlphaTo2 { z_at_2 } => z_at_2 + c * (2.0 - alpha),
            FitRegime::AlphaToAlpha0 { alpha0, z_at_alpha0 } => {
                z_at_alpha0
                    + c * (alpha - alpha0)
                        .max(0.0)
                        .powf(self.coefficient("b").unwrap_or(f64::NAN))
            }
        }
    }
}

pub const MIN_FIT_POINTS: usize = 8;

/// Least-squares fit of the regime's model to the converged records whose
/// `alpha` lies in the closed `window`.
pub fn fit_asymptote(records: &[ZeroRecord], regime: FitRegime, window: (f64, f64)) -> Result<AsymptoteFit, ZeroError> {
    let pts: Vec<(f64, f64)> = records
        .iter()
        .filter(|r| r.converged && r.alpha >= window.0 && r.alpha <= window.1)
        .map(|r| (r.alpha, r.z_min))
        .collect();
    if pts.len() < MIN_FIT_POINTS {
        return Err(ZeroError::Fit {
            needed: MIN_FIT_POINTS,
            got: pts.len(),
        });
    }
    let coefficients = match regime {
        FitRegime::AlphaTo1 => {
            let xy: Vec<(f64, f64)> = pts.iter().map(|&(a, z)| ((a - 1.0).ln(), z)).collect();
            let (slope, intercept) = linear_fit(&xy);
            vec![("c", slope), ("d", intercept)]
        }
        FitRegime::AlphaTo2 { z_at_2 } => {
            let (num, den) = pts.iter().fold((0.0, 0.0), |(n, d), &(a, z)| {
                let x = 2.0 - a;
                (n + x * (z - z_at_2), d + x * x)
            });
            vec![("c", num / den)]
        }
        FitRegime::AlphaToAlpha0 { alpha0, z_at_alpha0 } => {
            let xy: Vec<(f64, f64)> = pts
                .iter()
                .filter(|&&(a, z)| a > alpha0 && z < z_at_alpha0)
                .map(|&(a, z)| ((a - alpha0).ln(), (z_at_alpha0 - z).ln()))
                .collect();
            if xy.len() < MIN_FIT_POINTS {
                return Err(ZeroError::Fit {
                    needed: MIN_FIT_POINTS,
                    got: xy.len(),
                });
            }
            let (b, ln_neg_c) = linear_fit(&xy);
            vec![("b", b), ("c", -ln_neg_c.exp())]
        }
    };
    let mut fit = AsymptoteFit {
        regime,
        coefficients,
        fit_window: window,
        rms_residual: 0.0,
        points: pts.len(),
    };
    let ss: f64 = pts.iter().map(|&(a, z)| (z - fit.eval(a)).powi(2)).sum();
    fit.rms_residual = (ss / pts.len() as f64).sqrt();
    Ok(fit)
}

/// Ordinary least squares `y = slope * x + intercept`.
fn linear_fit(xy: &[(f64, f64)]) -> (f64, f64) {
    let n = xy.len() as f64;
    let mx = xy.iter().map(|p| p.0).sum::<f64>() / n;
    let my = xy.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = xy.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xy.iter().map(|&(x, _)| (x - mx).powi(2)).sum();
    let slope = sxy / sxx;
    (slope, my - slope * mx)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> NewtonOptions {
        NewtonOptions::default()
    }

    #[test]
    fn exact_limits_at_two() {
        let r = smallest_zero(2.0, 2.0, &opts()).unwrap();
        assert!((r.z_min - PI).abs() < 1e-10, "{r:?}");
        let r = smallest_zero(2.0, 1.0, &opts()).unwrap();
        assert!((r.z_min - PI / 2.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn example_solution_zero() {
        let r = smallest_zero(1.5, 1.0, &opts()).unwrap();
        assert!((r.z_min - 1.645).abs() < 5e-3, "{r:?}");
        assert!(r.converged && r.residual <= 1e-10);
    }

    #[test]
    fn rejects_bad_options() {
        let mut o = opts();
        o.z0 = -1.0;
        assert!(matches!(smallest_zero(1.5, 1.0, &o), Err(ZeroError::Options(_))));
        assert!(matches!(smallest_zero(0.9, 1.0, &opts()), Err(ZeroError::Options(_))));
        assert!(threshold_alpha0(1e-12, &MlAccuracy::default()).is_err());
    }

    #[test]
    fn no_zero_below_threshold() {
        assert!(matches!(
            smallest_zero(1.5, 2.0, &opts()),
            Err(ZeroError::NoZero { .. })
        ));
    }

    #[test]
    fn bracket_must_straddle() {
        let acc = MlAccuracy::default();
        assert!(matches!(
            threshold_alpha0_in(1.7, 1.8, 1e-4, &acc),
            Err(ZeroError::Bracket { .. })
        ));
    }

    #[test]
    fn minimum_report_for_sine() {
        let r = has_real_zero(2.0, 2.0, &MlAccuracy::default()).unwrap();
        assert!(r.has_zero && r.min_value <= 0.0);
        // first minimum of sin(z)/z solves tan z = z
        assert!((r.min_location - 4.493_409_457_909_064).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn grid_is_inclusive() {
        let g = alpha_grid(1.001, 2.0, 1e-3);
        assert_eq!(g.len(), 1000);
        assert!((g[999] - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fit_recovers_synthetic_models() {
        let mk = |alpha: f64, z: f64| ZeroRecord {
            alpha,
            beta: 1.0,
            z_min: z,
            iterations: 1,
            converged: true,
            residual: 0.0,
            no_zero: false,
            used_fallback: false,
        };
        let recs: Vec<_> = (1..=20)
            .map(|i| 1.0 + 0.002 * i as f64)
            .map(|a| mk(a, -0.5 * (a - 1.0).ln() + 3.0))
            .collect();
        let fit = fit_asymptote(&recs, FitRegime::AlphaTo1, (1.0, 1.1)).unwrap();
        assert!((fit.coefficient("c").unwrap() + 0.5).abs() < 1e-12);
        assert!((fit.coefficient("d").unwrap() - 3.0).abs() < 1e-12);
        assert!(fit.rms_residual < 1e-12);

        let a0 = 1.6;
        let recs: Vec<_> = (1..=20)
            .map(|i| a0 + 1e-4 * i as f64)
            .map(|a| mk(a, 5.0 - 4.0 * (a - a0).powf(0.5)))
            .collect();
        let fit = fit_asymptote(
            &recs,
            FitRegime::AlphaToAlpha0 {
                alpha0: a0,
                z_at_alpha0: 5.0,
            },
            (a0, 2.0),
        )
        .unwrap();
        assert!((fit.coefficient("b").unwrap() - 0.5).abs() < 1e-9);
        assert!((fit.coefficient("c").unwrap() + 4.0).abs() < 1e-8);

        assert!(matches!(
            fit_asymptote(&recs[..5], FitRegime::AlphaTo2 { z_at_2: PI }, (1.0, 2.0)),
            Err(ZeroError::Fit { .. })
        ));
    }
}
