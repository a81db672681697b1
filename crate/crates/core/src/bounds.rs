//! Separation horizons and two-sided envelopes for the distance between two
//! solutions of `D^alpha y = f(t, y)`, `alpha` in (1, 2).
//!
//! The horizon `T*` is the largest time on which the relevant functions
//! `E_{alpha,beta}(-L t^alpha)` stay positive. Substituting `z = L^(1/alpha) t`
//! turns this into `T* = min_beta Z_beta(alpha) / L^(1/alpha)`.
//!
//! Envelopes have the shape
//!
//! ```text
//! d0 E_{alpha,1}(a t^alpha) + d1 t E_{alpha,2}(a t^alpha)
//! ```
//!
//! with `a` the running minimum (lower) or maximum (upper) of the secant
//! slopes of `f`, see [`nonlinear_coeffs`].

use std::fmt;

use thiserror::Error;

use crate::fode::{self, FodeError, IVProblem, SolutionGrid};
use crate::ml::{ml_eval, MlAccuracy, MlError, MlQuery};
use crate::optimize::golden_min;
use crate::par::Execution;
use crate::zeros::{has_real_zero, smallest_zero, NewtonOptions, ZeroError, ZeroRecord};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Ml(#[from] MlError),
    #[error(transparent)]
    Zero(#[from] ZeroError),
    #[error(transparent)]
    Fode(#[from] FodeError),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("initial data do not fit any supported case: {0}")]
    Case(String),
    #[error("t = {t} outside the known solution range [0, {max}]")]
    Range { t: f64, max: f64 },
    #[error("t = {t} beyond the separation horizon {t_star}")]
    Horizon { t: f64, t_star: f64 },
}

/// A positivity requirement on `E_{alpha,beta}(-L t^alpha)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Condition {
    Beta1,
    BetaAlpha,
    Beta2,
}

impl Condition {
    pub const ALL: [Condition; 3] = [Condition::Beta1, Condition::BetaAlpha, Condition::Beta2];

    pub fn beta(self, alpha: f64) -> f64 {
        match self {
            Condition::Beta1 => 1.0,
            Condition::BetaAlpha => alpha,
            Condition::Beta2 => 2.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Condition::Beta1 => "beta_1",
            Condition::BetaAlpha => "beta_alpha",
            Condition::Beta2 => "beta_2",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizonReport {
    pub alpha: f64,
    pub lipschitz: f64,
    /// `f64::INFINITY` when no requested condition ever binds.
    pub t_star: f64,
    pub binding: Option<Condition>,
    /// Zero used per condition; `None` means the function has no real zero.
    pub zero_inputs: Vec<(Condition, Option<ZeroRecord>)>,
}

impl HorizonReport {
    pub fn is_unbounded(&self) -> bool {
        self.t_star.is_infinite()
    }
}

/// `Z_beta(alpha)` or `None` when the function stays positive.
fn zero_for(alpha: f64, cond: Condition, opts: &NewtonOptions) -> Result<Option<ZeroRecord>, ZeroError> {
    let beta = cond.beta(alpha);
    if cond == Condition::Beta2 {
        match has_real_zero(alpha, beta, &opts.ml) {
            Ok(r) if !r.has_zero => return Ok(None),
            Err(ZeroError::Scan { .. }) => return Ok(None),
            Err(e) => return Err(e),
            Ok(_) => {}
        }
    }
    match smallest_zero(alpha, beta, opts) {
        Ok(r) => Ok(Some(r)),
        Err(ZeroError::NoZero { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

pub fn horizon_tstar(alpha: f64, lipschitz: f64, conditions: &[Condition]) -> Result<HorizonReport, BoundsError> {
    horizon_tstar_with(alpha, lipschitz, conditions, &NewtonOptions::default())
}

pub fn horizon_tstar_with(
    alpha: f64,
    lipschitz: f64,
    conditions: &[Condition],
    opts: &NewtonOptions,
) -> Result<HorizonReport, BoundsError> {
    if !(lipschitz > 0.0 && lipschitz.is_finite()) {
        return Err(BoundsError::Input(format!("L = {lipschitz} must be positive")));
    }
    if conditions.is_empty() {
        return Err(BoundsError::Input("no conditions requested".into()));
    }
    let mut conds = conditions.to_vec();
    conds.sort();
    conds.dedup();
    let scale = lipschitz.powf(1.0 / alpha);
    let mut t_star = f64::INFINITY;
    let mut binding = None;
    let mut zero_inputs = Vec::with_capacity(conds.len());
    for c in conds {
        let rec = zero_for(alpha, c, opts)?;
        if let Some(r) = &rec {
            let t = r.z_min / scale;
            if t < t_star {
                t_star = t;
                binding = Some(c);
            }
        }
        zero_inputs.push((c, rec));
    }
    Ok(HorizonReport {
        alpha,
        lipschitz,
        t_star,
        binding,
        zero_inputs,
    })
}

/// `(d0 + t d1) E_{alpha,1}(L t^alpha)`, the Lipschitz-only upper bound on
/// `|y2(t) - y1(t)|`.
pub fn gronwall_envelope(
    alpha: f64,
    lipschitz: f64,
    d0: f64,
    d1: f64,
    t: f64,
    acc: &MlAccuracy,
) -> Result<f64, MlError> {
    if !(lipschitz >= 0.0 && d0 >= 0.0 && d1 >= 0.0 && t >= 0.0) {
        return Err(MlError::Domain(format!(
            "L = {lipschitz}, d0 = {d0}, d1 = {d1}, t = {t} must be nonnegative"
        )));
    }
    if t == 0.0 {
        return Ok(d0);
    }
    let e = ml_eval(&MlQuery::new(alpha, 1.0, lipschitz * t.powf(alpha))?, acc)?;
    Ok((d0 + t * d1) * e)
}

/// `d0 E_{alpha,1}(a t^alpha) + d1 t E_{alpha,2}(a t^alpha)`.
fn two_term(alpha: f64, a: f64, d0: f64, d1: f64, t: f64, acc: &MlAccuracy) -> Result<f64, MlError> {
    fode::linear_closed_form(alpha, a, d0, d1, t, acc)
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoeffPair {
    pub a_lower: f64,
    pub a_upper: f64,
    pub domain_used: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnvelopeKind {
    Gronwall,
    Linear,
    Nonlinear,
    Shifted,
}

impl EnvelopeKind {
    pub fn name(self) -> &'static str {
        match self {
            EnvelopeKind::Gronwall => "gronwall",
            EnvelopeKind::Linear => "linear",
            EnvelopeKind::Nonlinear => "nonlinear",
            EnvelopeKind::Shifted => "shifted",
        }
    }
}

/// Lower and upper bounds on a distance `|y2 - y1|` at each time.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub kind: EnvelopeKind,
    pub times: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub coeffs: Vec<CoeffPair>,
}

impl Envelope {
    /// Whether `lower - eps <= d <= upper + eps` at every time.
    pub fn sandwiches(&self, distance: &[f64], eps: f64) -> bool {
        distance.len() == self.times.len()
            && self
                .lower
                .iter()
                .zip(&self.upper)
                .zip(distance)
                .all(|((lo, hi), d)| lo - eps <= *d && *d <= hi + eps)
    }

    fn build(
        kind: EnvelopeKind,
        alpha: f64,
        times: &[f64],
        coeffs: Vec<CoeffPair>,
        d0: f64,
        d1: f64,
        acc: &MlAccuracy,
    ) -> Result<Self, BoundsError> {
        let mut lower = Vec::with_capacity(times.len());
        let mut upper = Vec::with_capacity(times.len());
        for (&t, c) in times.iter().zip(&coeffs) {
            lower.push(two_term(alpha, c.a_lower, d0, d1, t, acc)?);
            upper.push(two_term(alpha, c.a_upper, d0, d1, t, acc)?);
        }
        Ok(Envelope {
            kind,
            times: times.to_vec(),
            lower,
            upper,
            coeffs,
        })
    }
}

fn check_times(times: &[f64]) -> Result<(), BoundsError> {
    if times.is_empty() {
        return Err(BoundsError::Input("empty time grid".into()));
    }
    if times[0] < 0.0 || times.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(BoundsError::Input(
            "times must be nonnegative and strictly ascending".into(),
        ));
    }
    Ok(())
}

/// Samples per time used for the running extrema of a known coefficient `a(t)`.
pub const LINEAR_SAMPLES: usize = 2048;

/// Envelope for `f(t, y) = a(t) y`, with `a_*`, `a^*` the running min and max
/// of `a` on `[0, t]`.
pub fn linear_envelope<A>(
    alpha: f64,
    a: A,
    d0: f64,
    d1: f64,
    times: &[f64],
    acc: &MlAccuracy,
) -> Result<Envelope, BoundsError>
where
    A: Fn(f64) -> f64,
{
    check_times(times)?;
    if !(d0 >= 0.0 && d1 >= 0.0) {
        return Err(BoundsError::Input("d0 and d1 must be nonnegative".into()));
    }
    let mut coeffs: Vec<CoeffPair> = times
        .iter()
        .map(|&t| {
            let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
            for k in 0..=LINEAR_SAMPLES {
                let tau = if k == LINEAR_SAMPLES {
                    t
                } else {
                    k as f64 * t / LINEAR_SAMPLES as f64
                };
                let v = a(tau);
                lo = lo.min(v);
                hi = hi.max(v);
            }
            CoeffPair {
                a_lower: lo,
                a_upper: hi,
                domain_used: format!("tau in [0, {t}], {} samples", LINEAR_SAMPLES + 1),
            }
        })
        .collect();
    // each time has its own sample grid; keep the extrema monotone anyway
    make_running(&mut coeffs);
    Envelope::build(EnvelopeKind::Linear, alpha, times, coeffs, d0, d1, acc)
}

/// Sampling plan for the secant-slope extrema.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoeffSearch {
    /// Compact stand-in for `R \ {0}`; the limit `x -> 0` is added separately
    /// when the interval contains 0.
    pub x_domain: (f64, f64),
    pub tau_samples: usize,
    pub x_samples: usize,
}

impl CoeffSearch {
    pub fn new(x_domain: (f64, f64)) -> Self {
        Self {
            x_domain,
            tau_samples: 9,
            x_samples: 801,
        }
    }

    fn validate(&self) -> Result<(), BoundsError> {
        let (lo, hi) = self.x_domain;
        if !(lo < hi && lo.is_finite() && hi.is_finite()) {
            return Err(BoundsError::Input(format!("x domain [{lo}, {hi}] is empty")));
        }
        if self.tau_samples < 2 || self.x_samples < 3 {
            return Err(BoundsError::Input("need at least 2 tau and 3 x samples".into()));
        }
        Ok(())
    }

    fn describe(&self, t: f64) -> String {
        let (lo, hi) = self.x_domain;
        let limit = if lo <= 0.0 && hi >= 0.0 {
            ", x -> 0 by extrapolation"
        } else {
            ""
        };
        format!(
            "tau in [0, {t}] ({} samples), x in [{lo}, {hi}] \\ {{0}} ({} samples){limit}",
            self.tau_samples, self.x_samples
        )
    }
}

const LIMIT_OFFSETS: [f64; 3] = [1e-8, 1e-6, 1e-4];

/// Quadratic extrapolation of `q(x)` to `x = 0` from `q` at the three offsets.
fn extrapolate_to_zero<Q: Fn(f64) -> f64>(q: Q, sign: f64) -> f64 {
    let h = LIMIT_OFFSETS.map(|o| sign * o);
    let mut acc = 0.0;
    for k in 0..3 {
        let mut w = 1.0;
        for m in 0..3 {
            if m != k {
                w *= h[m] / (h[m] - h[k]);
            }
        }
        acc += w * q(h[k]);
    }
    acc
}

/// Extrema of `q(tau, x) = g(tau, x) / x` over `tau` in `[0, t]` and the
/// search's `x` domain without 0.
fn secant_extrema<G>(g: G, t: f64, search: &CoeffSearch) -> Result<CoeffPair, BoundsError>
where
    G: Fn(f64, f64) -> f64,
{
    search.validate()?;
    let (lo, hi) = search.x_domain;
    let nt = search.tau_samples;
    let nx = search.x_samples;
    let taus: Vec<f64> = (0..nt)
        .map(|i| if i == nt - 1 { t } else { t * i as f64 / (nt - 1) as f64 })
        .collect();
    let dx = (hi - lo) / (nx - 1) as f64;
    let xs: Vec<f64> = (0..nx)
        .map(|j| if j == nx - 1 { hi } else { lo + j as f64 * dx })
        .collect();
    let q = |tau: f64, x: f64| g(tau, x) / x;

    for &tau in &taus {
        let g0 = g(tau, 0.0);
        if g0.abs() > 1e-12 {
            return Err(BoundsError::Precondition(format!("f({tau}, 0) = {g0} is not zero")));
        }
    }

    // (value, tau index, x index) of the first-found extremum
    let mut best_min = (f64::INFINITY, 0usize, 0usize);
    let mut best_max = (f64::NEG_INFINITY, 0usize, 0usize);
    for (i, &tau) in taus.iter().enumerate() {
        for (j, &x) in xs.iter().enumerate() {
            if x == 0.0 {
                continue;
            }
            let v = q(tau, x);
            if !v.is_finite() {
                return Err(BoundsError::Precondition(format!("f({tau}, {x}) / {x} is not finite")));
            }
            if v < best_min.0 {
                best_min = (v, i, j);
            }
            if v > best_max.0 {
                best_max = (v, i, j);
            }
        }
    }

    let refine = |(_, i, j): (f64, usize, usize), sign: f64| -> f64 {
        let x0 = xs[j];
        let side = |x: f64| {
            if x0 > 0.0 {
                x.max(0.5 * x0.min(dx))
            } else {
                x.min(0.5 * x0.max(-dx))
            }
        };
        let xa = side(xs[j.saturating_sub(1)]);
        let xb = side(xs[(j + 1).min(nx - 1)]);
        let tau0 = taus[i];
        let obj_x = |x: f64| Ok::<_, ()>(sign * q(tau0, x));
        let (xr, _) = golden_min(xa.min(xb), xa.max(xb), 1e-10, obj_x).unwrap_or((x0, 0.0));
        let ta = taus[i.saturating_sub(1)];
        let tb = taus[(i + 1).min(nt - 1)];
        if tb > ta {
            let obj_t = |tau: f64| Ok::<_, ()>(sign * q(tau, xr));
            let (_, v) = golden_min(ta, tb, 1e-10, obj_t).unwrap_or((tau0, sign * q(tau0, xr)));
            sign * v
        } else {
            q(tau0, xr)
        }
    };
    let mut a_lower = best_min.0.min(refine(best_min, 1.0));
    let mut a_upper = best_max.0.max(refine(best_max, -1.0));

    if lo <= 0.0 && hi >= 0.0 {
        for &tau in &taus {
            for sign in [1.0, -1.0] {
                let l = extrapolate_to_zero(|x| q(tau, x), sign);
                a_lower = a_lower.min(l);
                a_upper = a_upper.max(l);
            }
        }
    }
    Ok(CoeffPair {
        a_lower,
        a_upper,
        domain_used: search.describe(t),
    })
}

/// `a_*(t)` and `a^*(t)`: infimum and supremum of `f(tau, x) / x` over
/// `tau` in `[0, t]`, `x != 0`. Requires `f(tau, 0) = 0`.
pub fn nonlinear_coeffs<F>(f: F, t: f64, search: &CoeffSearch) -> Result<CoeffPair, BoundsError>
where
    F: Fn(f64, f64) -> f64,
{
    if !(t >= 0.0) {
        return Err(BoundsError::Input(format!("t = {t} must be nonnegative")));
    }
    secant_extrema(f, t, search)
}

/// Shifted coefficients: extrema of `(f(tau, y + y1(tau)) - f(tau, y1(tau))) / y`
/// along a known solution `y1`, linearly interpolated between grid points.
pub fn shifted_coeffs<F>(f: F, y1_sol: &SolutionGrid, t: f64, search: &CoeffSearch) -> Result<CoeffPair, BoundsError>
where
    F: Fn(f64, f64) -> f64,
{
    let max = y1_sol.horizon();
    if !(t >= 0.0 && t <= max * (1.0 + 1e-12)) {
        return Err(BoundsError::Range { t, max });
    }
    let shift = |tau: f64| y1_sol.interp(tau.min(max)).unwrap_or(f64::NAN);
    secant_extrema(
        |tau, y| {
            let s = shift(tau);
            f(tau, y + s) - f(tau, s)
        },
        t,
        search,
    )
}

/// Enforce the running-extremum structure across ascending times.
fn make_running(coeffs: &mut [CoeffPair]) {
    for i in 1..coeffs.len() {
        coeffs[i].a_lower = coeffs[i].a_lower.min(coeffs[i - 1].a_lower);
        coeffs[i].a_upper = coeffs[i].a_upper.max(coeffs[i - 1].a_upper);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignCase {
    Auto,
    /// `y0 >= 0` and `y1 >= 0`
    NonNegative,
    /// `y0 <= 0` and `y1 <= 0`
    NonPositive,
}

fn resolve_case(y0: f64, y1: f64, case: SignCase) -> Result<SignCase, BoundsError> {
    let nonneg = y0 >= 0.0 && y1 >= 0.0;
    let nonpos = y0 <= 0.0 && y1 <= 0.0;
    match case {
        SignCase::Auto if nonneg => Ok(SignCase::NonNegative),
        SignCase::Auto if nonpos => Ok(SignCase::NonPositive),
        SignCase::NonNegative if nonneg => Ok(case),
        SignCase::NonPositive if nonpos => Ok(case),
        _ => Err(BoundsError::Case(format!("y0 = {y0}, y1 = {y1} for {case:?}"))),
    }
}

/// Conditions behind the nonlinear and shifted envelopes: all three in
/// general, and only `beta_alpha`, `beta_2` when the initial values coincide.
pub fn envelope_conditions(d0: f64) -> &'static [Condition] {
    if d0 == 0.0 {
        &[Condition::BetaAlpha, Condition::Beta2]
    } else {
        &Condition::ALL
    }
}

fn check_horizon(alpha: f64, lipschitz: f64, d0: f64, times: &[f64]) -> Result<HorizonReport, BoundsError> {
    let report = horizon_tstar(alpha, lipschitz, envelope_conditions(d0))?;
    let t_max = *times.last().unwrap_or(&0.0);
    if t_max > report.t_star * (1.0 + 1e-12) {
        return Err(BoundsError::Horizon {
            t: t_max,
            t_star: report.t_star,
        });
    }
    Ok(report)
}

/// Bounds on `|y(t)|` for the solution of `p` when `f(t, 0) = 0`, i.e. on the
/// distance to the zero solution.
pub fn nonlinear_envelope(
    p: &IVProblem,
    times: &[f64],
    case: SignCase,
    search: &CoeffSearch,
) -> Result<Envelope, BoundsError> {
    check_times(times)?;
    resolve_case(p.y0, p.y1, case)?;
    let acc = MlAccuracy::default();
    let (d0, d1) = (p.y0.abs(), p.y1.abs());
    if d0 == 0.0 && d1 == 0.0 {
        let zero = CoeffPair {
            a_lower: 0.0,
            a_upper: 0.0,
            domain_used: "trivial".into(),
        };
        return Ok(Envelope {
            kind: EnvelopeKind::Nonlinear,
            times: times.to_vec(),
            lower: vec![0.0; times.len()],
            upper: vec![0.0; times.len()],
            coeffs: vec![zero; times.len()],
        });
    }
    if p.lipschitz > 0.0 {
        check_horizon(p.alpha, p.lipschitz, d0, times)?;
    }
    let rhs = &p.rhs;
    let mut coeffs = Execution::default()
        .map(times, |&t| nonlinear_coeffs(|tau, x| rhs(tau, x), t, search))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    make_running(&mut coeffs);
    Envelope::build(EnvelopeKind::Nonlinear, p.alpha, times, coeffs, d0, d1, &acc)
}

/// Bounds on `y2(t) - y1(t)` for ordered initial data, using the shifted
/// coefficients along `y1_sol`, a numerical solution of `p1`.
pub fn shifted_envelope(
    p1: &IVProblem,
    p2: &IVProblem,
    y1_sol: &SolutionGrid,
    times: &[f64],
    search: &CoeffSearch,
) -> Result<Envelope, BoundsError> {
    check_times(times)?;
    if p1.alpha != p2.alpha {
        return Err(BoundsError::Input("problems must share alpha".into()));
    }
    let (d0, d1) = (p2.y0 - p1.y0, p2.y1 - p1.y1);
    if d0 < 0.0 || d1 < 0.0 {
        return Err(BoundsError::Case(format!(
            "need y1(0) <= y2(0) and y1'(0) <= y2'(0), got differences {d0}, {d1}"
        )));
    }
    if d0 == 0.0 && d1 == 0.0 {
        let zero = CoeffPair {
            a_lower: 0.0,
            a_upper: 0.0,
            domain_used: "trivial".into(),
        };
        return Ok(Envelope {
            kind: EnvelopeKind::Shifted,
            times: times.to_vec(),
            lower: vec![0.0; times.len()],
            upper: vec![0.0; times.len()],
            coeffs: vec![zero; times.len()],
        });
    }
    if p1.lipschitz > 0.0 {
        check_horizon(p1.alpha, p1.lipschitz, d0, times)?;
    }
    let rhs = &p1.rhs;
    let mut coeffs = Execution::default()
        .map(times, |&t| shifted_coeffs(|tau, y| rhs(tau, y), y1_sol, t, search))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    make_running(&mut coeffs);
    Envelope::build(
        EnvelopeKind::Shifted,
        p1.alpha,
        times,
        coeffs,
        d0,
        d1,
        &MlAccuracy::default(),
    )
}

/// How the initial data of a pair are ordered.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ordering {
    /// `y1(0) < y2(0)`
    StrictValues,
    /// `y1(0) = y2(0)`, `y1'(0) < y2'(0)`
    EqualValues,
    Identical,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeparationReport {
    pub ordering: Ordering,
    pub horizon: HorizonReport,
    /// Horizon after the pointwise check of the initial-data condition, when
    /// that check was needed; never larger than `horizon.t_star`.
    pub t_star: f64,
    /// Tolerance band: 10x the sum of both solvers' error estimates.
    pub band: f64,
    /// `y2 - y1 > -band` at every grid time in `(0, min(T*, T)]`.
    pub separated: bool,
    /// Smallest `y2 - y1` on `(0, min(T*, T)]`.
    pub min_gap: f64,
    /// First sign change of `y2 - y1` on `(0, T]`, linearly interpolated.
    pub first_crossing: Option<f64>,
    pub times: Vec<f64>,
    pub diff: Vec<f64>,
}

impl SeparationReport {
    /// A crossing exists and lies beyond the horizon (up to the band).
    pub fn crossing_after_horizon(&self) -> Option<f64> {
        self.first_crossing.filter(|&t| t >= self.t_star - self.band.max(1e-9))
    }
}

fn ordering_of(p1: &IVProblem, p2: &IVProblem) -> Result<Ordering, BoundsError> {
    if p1.y0 == p2.y0 && p1.y1 == p2.y1 {
        Ok(Ordering::Identical)
    } else if p1.y0 < p2.y0 {
        Ok(Ordering::StrictValues)
    } else if p1.y0 == p2.y0 && p1.y1 < p2.y1 {
        Ok(Ordering::EqualValues)
    } else {
        Err(BoundsError::Case(format!(
            "initial data ({}, {}) vs ({}, {}) are not ordered",
            p1.y0, p1.y1, p2.y0, p2.y1
        )))
    }
}

/// Solve both problems, compute `T*` and check that the solutions stay
/// ordered on `(0, T*]`.
pub fn separation_check(p1: &IVProblem, p2: &IVProblem, n_steps: usize) -> Result<SeparationReport, BoundsError> {
    separation_check_with(Execution::default(), p1, p2, n_steps)
}

pub fn separation_check_with(
    exec: Execution,
    p1: &IVProblem,
    p2: &IVProblem,
    n_steps: usize,
) -> Result<SeparationReport, BoundsError> {
    if p1.alpha != p2.alpha || p1.horizon != p2.horizon {
        return Err(BoundsError::Input("problems must share alpha and horizon".into()));
    }
    let ordering = ordering_of(p1, p2)?;
    let alpha = p1.alpha;
    let l = p1.lipschitz.max(p2.lipschitz);
    let conditions: &[Condition] = match ordering {
        Ordering::StrictValues if p1.y1 > p2.y1 => &[Condition::BetaAlpha],
        Ordering::EqualValues => &[Condition::BetaAlpha, Condition::Beta2],
        _ => &Condition::ALL,
    };
    let horizon = if l > 0.0 {
        horizon_tstar(alpha, l, conditions)?
    } else {
        HorizonReport {
            alpha,
            lipschitz: l,
            t_star: f64::INFINITY,
            binding: None,
            zero_inputs: vec![],
        }
    };

    let (s1, s2) = exec.join(
        || fode::solve_with_estimate(p1, n_steps),
        || fode::solve_with_estimate(p2, n_steps),
    );
    let (s1, s2) = (s1?, s2?);
    let band = 10.0 * (s1.error_estimate + s2.error_estimate);
    let times = s1.fine.times.clone();
    let diff: Vec<f64> = s2.fine.values.iter().zip(&s1.fine.values).map(|(a, b)| a - b).collect();

    let mut t_star = horizon.t_star;
    if ordering == Ordering::StrictValues && p1.y1 > p2.y1 {
        // the initial-data condition is not implied by positivity; check it on the grid
        let acc = MlAccuracy::default();
        let (d0, d1) = (p2.y0 - p1.y0, p2.y1 - p1.y1);
        for &t in &times {
            if t > t_star {
                break;
            }
            if two_term(alpha, -l, d0, d1, t, &acc)? <= 0.0 {
                t_star = t;
                break;
            }
        }
    }

    let limit = t_star.min(p1.horizon);
    let mut min_gap = f64::INFINITY;
    for (&t, &d) in times.iter().zip(&diff).skip(1) {
        if t > limit * (1.0 + 1e-12) {
            break;
        }
        min_gap = min_gap.min(d);
    }
    let separated = min_gap > -band || min_gap == f64::INFINITY;

    let mut first_crossing = None;
    for i in 1..diff.len() - 1 {
        let (a, b) = (diff[i], diff[i + 1]);
        if a != 0.0 && (b == 0.0 || (a > 0.0) != (b > 0.0)) {
            let w = a / (a - b);
            first_crossing = Some(times[i] + w * (times[i + 1] - times[i]));
            break;
        }
    }

    Ok(SeparationReport {
        ordering,
        horizon,
        t_star,
        band,
        separated,
        min_gap,
        first_crossing,
        times,
        diff,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComparisonReport {
    pub ordered: bool,
    /// `min_i (w_i - v_i)`
    pub min_gap: f64,
    pub iterations: u32,
}

/// Brute-force check of the comparison principle used for the ordering
/// results. With `g(t, y) = f(t, y) + L y`, nondecreasing in `y`, the fixed
/// points of
///
/// ```text
/// v = v1 + int_0^t (t - s)^(a - 1) E_{a,a}(-L (t - s)^a) g(s, v(s)) ds
/// ```
///
/// for the free terms `v1`, `w1` of two ordered initial data must stay
/// ordered. Each fixed point is found by plain Picard iteration on an
/// `n`-step grid.
pub fn comparison_spot_check<F>(
    alpha: f64,
    lipschitz: f64,
    f: F,
    lower_data: (f64, f64),
    upper_data: (f64, f64),
    horizon: f64,
    n: usize,
) -> Result<ComparisonReport, BoundsError>
where
    F: Fn(f64, f64) -> f64,
{
    if !(1..=64).contains(&n) {
        return Err(BoundsError::Input(format!("n = {n} not in 1..=64")));
    }
    let acc = MlAccuracy::default();
    let g = |t: f64, y: f64| f(t, y) + lipschitz * y;
    let (times, step) = SolutionGrid::uniform_times(horizon, n);
    let fixed_point = |(y0, y1): (f64, f64)| -> Result<(SolutionGrid, u32), BoundsError> {
        let mut cur = SolutionGrid {
            values: vec![y0; times.len()],
            times: times.clone(),
            step,
        };
        for it in 1..=500 {
            let next = fode::voc_eval(alpha, -lipschitz, y0, y1, g, &cur, &acc)?;
            let change = next
                .values
                .iter()
                .zip(&cur.values)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            cur = next;
            if change <= 1e-14 * (1.0 + cur.values.iter().fold(0.0_f64, |m, v| m.max(v.abs()))) {
                return Ok((cur, it));
            }
        }
        Err(BoundsError::Precondition("Picard iteration did not settle".into()))
    };
    let (v, iv) = fixed_point(lower_data)?;
    let (w, iw) = fixed_point(upper_data)?;
    let min_gap = w
        .values
        .iter()
        .zip(&v.values)
        .map(|(a, b)| a - b)
        .fold(f64::INFINITY, f64::min);
    Ok(ComparisonReport {
        ordered: min_gap > 0.0,
        min_gap,
        iterations: iv.max(iw),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn acc() -> MlAccuracy {
        MlAccuracy::default()
    }

    #[test]
    fn gronwall_trivial_cases() {
        assert_eq!(gronwall_envelope(1.5, 0.0, 1.0, 2.0, 3.0, &acc()).unwrap(), 7.0);
        assert_eq!(gronwall_envelope(1.5, 4.0, 0.3, 2.0, 0.0, &acc()).unwrap(), 0.3);
        assert!(gronwall_envelope(1.5, -1.0, 1.0, 1.0, 1.0, &acc()).is_err());
    }

    #[test]
    fn horizon_at_two_binds_on_beta_one() {
        let r = horizon_tstar(2.0, 1.0, &Condition::ALL).unwrap();
        assert!((r.t_star - PI / 2.0).abs() < 1e-10);
        assert_eq!(r.binding, Some(Condition::Beta1));
    }

    #[test]
    fn horizon_unbounded_below_threshold() {
        let r = horizon_tstar(1.5, 1.0, &[Condition::Beta2]).unwrap();
        assert!(r.is_unbounded() && r.binding.is_none());
        assert_eq!(r.zero_inputs, vec![(Condition::Beta2, None)]);
    }

    #[test]
    fn horizon_rejects_bad_input() {
        assert!(horizon_tstar(1.5, 0.0, &Condition::ALL).is_err());
        assert!(horizon_tstar(1.5, 1.0, &[]).is_err());
    }

    #[test]
    fn linear_envelope_constant_coefficient_collapses() {
        let times: Vec<f64> = (0..=10).map(|i| 0.1 * i as f64).collect();
        let env = linear_envelope(1.5, |_| -0.7, 1.0, 0.5, &times, &acc()).unwrap();
        assert_eq!(env.lower, env.upper);
        assert_eq!(env.lower[0], 1.0);
        for (t, v) in times.iter().zip(&env.upper) {
            let want = fode::linear_closed_form(1.5, -0.7, 1.0, 0.5, *t, &acc()).unwrap();
            assert!((v - want).abs() < 1e-15);
        }
    }

    #[test]
    fn coeffs_of_linear_rhs() {
        let c = nonlinear_coeffs(|_, y| -2.5 * y, 1.0, &CoeffSearch::new((-3.0, 3.0))).unwrap();
        assert!((c.a_lower + 2.5).abs() < 1e-12 && (c.a_upper + 2.5).abs() < 1e-12);
    }

    #[test]
    fn coeffs_of_sine() {
        let c = nonlinear_coeffs(|_, y: f64| -y.sin(), 1.0, &CoeffSearch::new((-20.0, 20.0))).unwrap();
        assert!((c.a_lower + 1.0).abs() < 1e-9, "{c:?}");
        assert!((c.a_upper - 0.217_233_628_211_221_66).abs() < 1e-9, "{c:?}");
        assert!(c.domain_used.contains("[-20, 20]"));
    }

    #[test]
    fn coeffs_of_cubic() {
        let c = nonlinear_coeffs(|_, y: f64| -y * y * y, 1.0, &CoeffSearch::new((-2.0, 2.0))).unwrap();
        assert!((c.a_lower + 4.0).abs() < 1e-12, "{c:?}");
        assert!(c.a_upper.abs() < 1e-12, "{c:?}");
    }

    #[test]
    fn coeffs_precondition() {
        let r = nonlinear_coeffs(|_, y| y + 1.0, 1.0, &CoeffSearch::new((-1.0, 1.0)));
        assert!(matches!(r, Err(BoundsError::Precondition(_))));
    }

    #[test]
    fn shifted_coeffs_zero_shift_and_range() {
        let (times, step) = SolutionGrid::uniform_times(2.0, 20);
        let zero = SolutionGrid {
            values: vec![0.0; times.len()],
            times,
            step,
        };
        let s = CoeffSearch::new((-20.0, 20.0));
        let a = shifted_coeffs(|_, y: f64| -y.sin(), &zero, 1.0, &s).unwrap();
        let b = nonlinear_coeffs(|_, y: f64| -y.sin(), 1.0, &s).unwrap();
        assert_eq!((a.a_lower, a.a_upper), (b.a_lower, b.a_upper));
        assert!(matches!(
            shifted_coeffs(|_, y: f64| -y.sin(), &zero, 2.5, &s),
            Err(BoundsError::Range { .. })
        ));
    }

    #[test]
    fn sign_cases() {
        let p = IVProblem::new(1.5, |_, y: f64| -y.sin(), 0.5, -0.1, 1.0, 1.0).unwrap();
        let times = [0.0, 0.5];
        let s = CoeffSearch::new((-2.0, 2.0));
        assert!(matches!(
            nonlinear_envelope(&p, &times, SignCase::Auto, &s),
            Err(BoundsError::Case(_))
        ));
        let p = p.with_initial(0.0, 0.0);
        let env = nonlinear_envelope(&p, &times, SignCase::Auto, &s).unwrap();
        assert!(env.lower.iter().chain(&env.upper).all(|&v| v == 0.0));
    }

    #[test]
    fn envelope_past_horizon_is_rejected() {
        let p = IVProblem::linear(1.5, -1.0, 1.0, 0.0, 3.0).unwrap();
        let r = nonlinear_envelope(&p, &[0.0, 1.0, 2.0], SignCase::Auto, &CoeffSearch::new((-1.0, 1.0)));
        assert!(matches!(r, Err(BoundsError::Horizon { .. })));
    }

    #[test]
    fn unordered_pair_is_a_case_error() {
        let p = IVProblem::linear(1.5, -1.0, 1.0, 0.0, 1.0).unwrap();
        let q = p.with_initial(0.5, 0.0);
        assert!(matches!(separation_check(&p, &q, 32), Err(BoundsError::Case(_))));
    }

    #[test]
    fn comparison_keeps_order() {
        let r = comparison_spot_check(1.5, 1.0, |_, y: f64| -y.sin(), (0.0, 0.0), (0.3, 0.1), 1.0, 32).unwrap();
        assert!(r.ordered, "{r:?}");
        assert!(comparison_spot_check(1.5, 1.0, |_, y| -y, (0.0, 0.0), (1.0, 0.0), 1.0, 65).is_err());
    }
}
