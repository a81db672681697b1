//! Caputo initial value problems `D^alpha y = f(t, y)`, `y(0) = y0`,
//! `y'(0) = y1`, for `alpha` in (1, 2).
//!
//! [`solve_ivp`] is the fractional Adams predictor-corrector scheme applied to
//! the Volterra form
//!
//! ```text
//! y(t) = y0 + y1 t + 1/Gamma(alpha) * int_0^t (t - s)^(alpha - 1) f(s, y(s)) ds
//! ```
//!
//! with product-rectangle predictor and product-trapezoid corrector weights on
//! a uniform grid. The full history is kept, so a solve costs `O(n^2)`.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::gamma::rgamma;
use crate::ml::{ml_eval, MlAccuracy, MlError, MlQuery};

pub type Rhs = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FodeError {
    #[error("invalid problem: {0}")]
    Problem(String),
    #[error("right-hand side returned {value} at t = {t}")]
    Rhs { t: f64, value: f64 },
    #[error("solution diverged at t = {t}")]
    Divergence { t: f64 },
    #[error("grid mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Ml(#[from] MlError),
}

#[derive(Clone)]
pub struct IVProblem {
    pub alpha: f64,
    pub rhs: Rhs,
    pub y0: f64,
    pub y1: f64,
    pub horizon: f64,
    /// Lipschitz constant of `rhs` in `y`, supplied by the caller.
    pub lipschitz: f64,
}

impl fmt::Debug for IVProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IVProblem")
            .field("alpha", &self.alpha)
            .field("y0", &self.y0)
            .field("y1", &self.y1)
            .field("horizon", &self.horizon)
            .field("lipschitz", &self.lipschitz)
            .finish_non_exhaustive()
    }
}

impl IVProblem {
    pub fn new<F>(alpha: f64, rhs: F, y0: f64, y1: f64, horizon: f64, lipschitz: f64) -> Result<Self, FodeError>
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        let p = Self {
            alpha,
            rhs: Arc::new(rhs),
            y0,
            y1,
            horizon,
            lipschitz,
        };
        p.validate()?;
        Ok(p)
    }

    /// `D^alpha y = lambda y`.
    pub fn linear(alpha: f64, lambda: f64, y0: f64, y1: f64, horizon: f64) -> Result<Self, FodeError> {
        Self::new(alpha, move |_, y| lambda * y, y0, y1, horizon, lambda.abs())
    }

    /// Same equation and horizon, different initial data.
    pub fn with_initial(&self, y0: f64, y1: f64) -> Self {
        Self { y0, y1, ..self.clone() }
    }

    pub fn validate(&self) -> Result<(), FodeError> {
        if !(self.alpha > 1.0 && self.alpha < 2.0) {
            return Err(FodeError::Problem(format!("alpha = {} not in (1, 2)", self.alpha)));
        }
        if !(self.horizon > 0.0 && self.horizon.is_finite()) {
            return Err(FodeError::Problem(format!(
                "horizon = {} must be positive",
                self.horizon
            )));
        }
        if !(self.lipschitz >= 0.0) {
            return Err(FodeError::Problem(format!(
                "lipschitz = {} must be nonnegative",
                self.lipschitz
            )));
        }
        if !(self.y0.is_finite() && self.y1.is_finite()) {
            return Err(FodeError::Problem("initial values must be finite".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolutionGrid {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub step: f64,
}

impl SolutionGrid {
    /// Uniform grid `t_i = i * step`, `i = 0..=n`.
    pub fn uniform_times(horizon: f64, n: usize) -> (Vec<f64>, f64) {
        let h = horizon / n as f64;
        ((0..=n).map(|i| i as f64 * h).collect(), h)
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn horizon(&self) -> f64 {
        *self.times.last().unwrap_or(&0.0)
    }

    /// Piecewise-linear interpolation; `None` outside the grid.
    pub fn interp(&self, t: f64) -> Option<f64> {
        let last = self.times.len().checked_sub(1)?;
        if !(t >= 0.0 && t <= self.times[last] * (1.0 + 1e-14)) {
            return None;
        }
        let k = ((t / self.step).floor() as usize).min(last.saturating_sub(1));
        if last == 0 {
            return Some(self.values[0]);
        }
        let w = (t - self.times[k]) / self.step;
        Some(self.values[k] + w * (self.values[k + 1] - self.values[k]))
    }

    /// Every `stride`-th point, as a coarser grid on the same horizon.
    pub fn subsample(&self, stride: usize) -> SolutionGrid {
        SolutionGrid {
            times: self.times.iter().step_by(stride).copied().collect(),
            values: self.values.iter().step_by(stride).copied().collect(),
            step: self.step * stride as f64,
        }
    }

    fn check_uniform(&self) -> Result<(), FodeError> {
        if self.times.len() != self.values.len() || self.times.len() < 2 {
            return Err(FodeError::Shape(format!(
                "{} times vs {} values",
                self.times.len(),
                self.values.len()
            )));
        }
        if self.times[0] != 0.0 || !(self.step > 0.0) {
            return Err(FodeError::Shape("grid must start at 0 with a positive step".into()));
        }
        for (i, w) in self.times.windows(2).enumerate() {
            if ((w[1] - w[0]) - self.step).abs() > 1e-12 * self.step.max(1.0) {
                return Err(FodeError::Shape(format!("non-uniform spacing at index {i}")));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverOptions {
    /// Corrector sweeps per step; 1 is classic PECE.
    pub correctors: u32,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self { correctors: 1 }
    }
}

/// Product-integration weights shared by the solver and [`voc_eval`].
struct Weights {
    alpha: f64,
    /// `k^alpha`
    pa: Vec<f64>,
    /// `k^(alpha + 1)`
    pa1: Vec<f64>,
}

impl Weights {
    fn new(alpha: f64, n: usize) -> Self {
        let pa = (0..=n + 1).map(|k| (k as f64).powf(alpha)).collect();
        let pa1 = (0..=n + 1).map(|k| (k as f64).powf(alpha + 1.0)).collect();
        Self { alpha, pa, pa1 }
    }

    /// Rectangle weight of node `j` for target `n + 1`, without `h^alpha / alpha`.
    fn rect(&self, j: usize, n: usize) -> f64 {
        self.pa[n + 1 - j] - self.pa[n - j]
    }

    /// Trapezoid weight of node `j <= m` for target `m`, without
    /// `h^alpha / (alpha (alpha + 1))`.
    fn trap(&self, j: usize, m: usize) -> f64 {
        let a = self.alpha;
        if j == m {
            1.0
        } else if j == 0 {
            let n = (m - 1) as f64;
            self.pa1[m - 1] - (n - a) * self.pa[m]
        } else {
            let k = m - j;
            self.pa1[k + 1] + self.pa1[k - 1] - 2.0 * self.pa1[k]
        }
    }
}

pub fn solve_ivp(p: &IVProblem, n_steps: usize) -> Result<SolutionGrid, FodeError> {
    solve_ivp_with(p, n_steps, &SolverOptions::default())
}

pub fn solve_ivp_with(p: &IVProblem, n_steps: usize, opts: &SolverOptions) -> Result<SolutionGrid, FodeError> {
    p.validate()?;
    if n_steps == 0 {
        return Err(FodeError::Problem("n_steps must be positive".into()));
    }
    if !(1..=3).contains(&opts.correctors) {
        return Err(FodeError::Problem(format!(
            "correctors = {} not in 1..=3",
            opts.correctors
        )));
    }
    let n = n_steps;
    let alpha = p.alpha;
    let (times, h) = SolutionGrid::uniform_times(p.horizon, n);
    let w = Weights::new(alpha, n);
    let ha = h.powf(alpha) * rgamma(alpha);
    let c_pred = ha / alpha;
    let c_corr = ha / (alpha * (alpha + 1.0));

    let eval = |t: f64, y: f64| -> Result<f64, FodeError> {
        let v = (p.rhs)(t, y);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(FodeError::Rhs { t, value: v })
        }
    };

    let mut y = Vec::with_capacity(n + 1);
    let mut f = Vec::with_capacity(n + 1);
    y.push(p.y0);
    f.push(eval(0.0, p.y0)?);

    for k in 0..n {
        let t_next = times[k + 1];
        let poly = p.y0 + p.y1 * t_next;
        let mut pred = 0.0;
        let mut corr = 0.0;
        for (j, fj) in f.iter().enumerate().take(k + 1) {
            pred += w.rect(j, k) * fj;
            corr += w.trap(j, k + 1) * fj;
        }
        let mut yk = poly + c_pred * pred;
        for _ in 0..opts.correctors {
            if !yk.is_finite() {
                return Err(FodeError::Divergence { t: t_next });
            }
            yk = poly + c_corr * (corr + eval(t_next, yk)?);
        }
        if !yk.is_finite() {
            return Err(FodeError::Divergence { t: t_next });
        }
        y.push(yk);
        f.push(eval(t_next, yk)?);
    }
    Ok(SolutionGrid {
        times,
        values: y,
        step: h,
    })
}

/// A solution together with a Richardson-type error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimatedSolution {
    /// Solution on the `2n` grid.
    pub fine: SolutionGrid,
    /// `max_i |y_n(t_i) - y_2n(t_i)|` over the shared nodes. This bounds the
    /// error of the fine solution whenever the scheme converges with order >= 1.
    pub error_estimate: f64,
}

pub fn solve_with_estimate(p: &IVProblem, n_steps: usize) -> Result<EstimatedSolution, FodeError> {
    let coarse = solve_ivp(p, n_steps)?;
    let fine = solve_ivp(p, 2 * n_steps)?;
    let error_estimate = coarse
        .values
        .iter()
        .zip(fine.values.iter().step_by(2))
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    Ok(EstimatedSolution { fine, error_estimate })
}

/// `y0 E_{alpha,1}(lambda t^alpha) + y1 t E_{alpha,2}(lambda t^alpha)`, the
/// solution of `D^alpha y = lambda y`.
pub fn linear_closed_form(alpha: f64, lambda: f64, y0: f64, y1: f64, t: f64, acc: &MlAccuracy) -> Result<f64, MlError> {
    if !(t >= 0.0) {
        return Err(MlError::Domain(format!("t = {t} must be nonnegative")));
    }
    if t == 0.0 {
        return Ok(y0);
    }
    let x = lambda * t.powf(alpha);
    let e1 = ml_eval(&MlQuery::new(alpha, 1.0, x)?, acc)?;
    let e2 = ml_eval(&MlQuery::new(alpha, 2.0, x)?, acc)?;
    Ok(y0 * e1 + y1 * t * e2)
}

/// Right-hand side of the variation-of-constants representation of the
/// solution of `D^alpha y = m y + g(t, y)`, evaluated along `sol`:
///
/// ```text
/// y0 E_{a,1}(m t^a) + y1 t E_{a,2}(m t^a)
///     + int_0^t (t - s)^(a - 1) E_{a,a}(m (t - s)^a) g(s, y(s)) ds
/// ```
///
/// The integral uses product-trapezoid weights for the factor `(t - s)^(a - 1)`
/// and treats `E_{a,a}(m (t - s)^a) g(s, y(s))` as piecewise linear.
pub fn voc_eval<G>(
    alpha: f64,
    m_coef: f64,
    y0: f64,
    y1: f64,
    g: G,
    sol: &SolutionGrid,
    acc: &MlAccuracy,
) -> Result<SolutionGrid, FodeError>
where
    G: Fn(f64, f64) -> f64,
{
    if !(alpha > 1.0 && alpha < 2.0) {
        return Err(FodeError::Problem(format!("alpha = {alpha} not in (1, 2)")));
    }
    sol.check_uniform()?;
    let n = sol.len() - 1;
    let h = sol.step;
    let w = Weights::new(alpha, n);
    let c_corr = h.powf(alpha) / (alpha * (alpha + 1.0));

    // kernel E_{a,a}(m (k h)^a), shared by every target node
    let kernel = (0..=n)
        .map(|k| {
            let x = m_coef * (k as f64 * h).powf(alpha);
            ml_eval(&MlQuery::new(alpha, alpha, x)?, acc)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let gv: Vec<f64> = sol.times.iter().zip(&sol.values).map(|(&t, &y)| g(t, y)).collect();

    let mut out = Vec::with_capacity(n + 1);
    for (i, &t) in sol.times.iter().enumerate() {
        let free = linear_closed_form(alpha, m_coef, y0, y1, t, acc)?;
        let mut s = 0.0;
        for j in 0..=i {
            s += w.trap(j, i) * kernel[i - j] * gv[j];
        }
        let v = if i == 0 { free } else { free + c_corr * s };
        out.push(v);
    }
    Ok(SolutionGrid {
        times: sol.times.clone(),
        values: out,
        step: h,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn acc() -> MlAccuracy {
        MlAccuracy::default()
    }

    #[test]
    fn zero_rhs_is_linear_polynomial() {
        let p = IVProblem::new(1.5, |_, _| 0.0, 2.0, 3.0, 1.0, 0.0).unwrap();
        let s = solve_ivp(&p, 100).unwrap();
        for (t, y) in s.times.iter().zip(&s.values) {
            assert!((y - (2.0 + 3.0 * t)).abs() < 1e-14);
        }
    }

    #[test]
    fn example_solution_matches_closed_form() {
        let p = IVProblem::linear(1.5, -1.0, 1.0, 0.0, 3.0).unwrap();
        let s = solve_ivp(&p, 2048).unwrap();
        let err = s
            .times
            .iter()
            .zip(&s.values)
            .map(|(&t, &y)| (y - linear_closed_form(1.5, -1.0, 1.0, 0.0, t, &acc()).unwrap()).abs())
            .fold(0.0, f64::max);
        assert!(err <= 1e-4, "max error {err:e}");
    }

    #[test]
    fn uniform_grid_and_initial_value() {
        let p = IVProblem::linear(1.3, -2.0, 0.7, 0.1, 2.0).unwrap();
        let s = solve_ivp(&p, 64).unwrap();
        assert_eq!(s.values[0], 0.7);
        assert_eq!(s.len(), 65);
        for w in s.times.windows(2) {
            assert!((w[1] - w[0] - s.step).abs() <= 1e-14);
        }
    }

    #[test]
    fn closed_form_at_origin() {
        assert_eq!(linear_closed_form(1.7, -3.0, 0.25, 9.0, 0.0, &acc()).unwrap(), 0.25);
    }

    #[test]
    fn more_correctors_allowed_up_to_three() {
        let p = IVProblem::linear(1.5, -1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(solve_ivp_with(&p, 16, &SolverOptions { correctors: 3 }).is_ok());
        assert!(matches!(
            solve_ivp_with(&p, 16, &SolverOptions { correctors: 4 }),
            Err(FodeError::Problem(_))
        ));
    }

    #[test]
    fn divergence_and_rhs_failures_report_time() {
        let p = IVProblem::new(1.5, |t, _| if t > 0.5 { f64::NAN } else { 0.0 }, 1.0, 0.0, 1.0, 0.0).unwrap();
        match solve_ivp(&p, 10) {
            Err(FodeError::Rhs { t, .. }) => assert!((t - 0.6).abs() < 1e-12),
            other => panic!("{other:?}"),
        }
        let p = IVProblem::new(1.5, |_, y| y * y * y, 1.0, 1.0, 50.0, 0.0).unwrap();
        assert!(matches!(
            solve_ivp(&p, 200),
            Err(FodeError::Divergence { .. } | FodeError::Rhs { .. })
        ));
    }

    #[test]
    fn rejects_bad_problems() {
        assert!(IVProblem::linear(2.0, -1.0, 1.0, 0.0, 1.0).is_err());
        assert!(IVProblem::linear(1.5, -1.0, 1.0, 0.0, 0.0).is_err());
        assert!(IVProblem::new(1.5, |_, _| 0.0, 1.0, 0.0, 1.0, -1.0).is_err());
    }

    #[test]
    fn voc_without_forcing_is_closed_form() {
        let (times, step) = SolutionGrid::uniform_times(2.0, 40);
        let sol = SolutionGrid {
            values: vec![0.0; times.len()],
            times,
            step,
        };
        let v = voc_eval(1.6, -0.5, 1.0, 0.3, |_, _| 0.0, &sol, &acc()).unwrap();
        for (t, y) in v.times.iter().zip(&v.values) {
            let want = linear_closed_form(1.6, -0.5, 1.0, 0.3, *t, &acc()).unwrap();
            assert!((y - want).abs() < 1e-14);
        }
    }

    #[test]
    fn voc_with_zero_coefficient_reproduces_corrector() {
        // with m = 0 the representation is the Volterra form itself, so a
        // solve with many corrector sweeps is a fixed point up to roundoff
        let p = IVProblem::new(1.5, |_, y: f64| -y.sin(), 1.0, 0.0, 1.0, 1.0).unwrap();
        let s = solve_ivp_with(&p, 64, &SolverOptions { correctors: 3 }).unwrap();
        let v = voc_eval(1.5, 0.0, 1.0, 0.0, |_, y: f64| -y.sin(), &s, &acc()).unwrap();
        let dev = v
            .values
            .iter()
            .zip(&s.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        assert!(dev < 1e-6, "{dev:e}");
    }

    #[test]
    fn voc_rejects_ragged_grid() {
        let sol = SolutionGrid {
            times: vec![0.0, 0.1, 0.25],
            values: vec![0.0; 3],
            step: 0.1,
        };
        assert!(matches!(
            voc_eval(1.5, 0.0, 0.0, 0.0, |_, _| 0.0, &sol, &acc()),
            Err(FodeError::Shape(_))
        ));
    }

    #[test]
    fn interpolation() {
        let sol = SolutionGrid {
            times: vec![0.0, 1.0, 2.0],
            values: vec![0.0, 2.0, 0.0],
            step: 1.0,
        };
        assert_eq!(sol.interp(0.5), Some(1.0));
        assert_eq!(sol.interp(2.0), Some(0.0));
        assert_eq!(sol.interp(2.5), None);
    }
}
