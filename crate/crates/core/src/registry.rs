//! Named test problems: pairs of initial data for one equation, each with the
//! envelope that applies to it.

use std::sync::Arc;

use crate::bounds::{
    gronwall_envelope, linear_envelope, nonlinear_envelope, separation_check, shifted_envelope, BoundsError,
    CoeffSearch, Envelope, SeparationReport, SignCase,
};
use crate::fode::{self, IVProblem, Rhs};
use crate::ml::MlAccuracy;

/// Which envelope construction applies to the pair.
#[derive(Clone)]
pub enum Structure {
    /// `f(t, y) = a(t) y`
    Linear(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
    /// `f(t, 0) = 0` and the lower solution is identically zero.
    ZeroSolution,
    /// Anything else: coefficients shifted along the lower solution.
    General,
}

#[derive(Clone)]
pub struct RegistryProblem {
    pub key: &'static str,
    pub description: &'static str,
    pub alpha: f64,
    pub rhs: Rhs,
    pub lipschitz: f64,
    pub horizon: f64,
    pub lower: (f64, f64),
    pub upper: (f64, f64),
    pub structure: Structure,
    /// Secant-slope search domain for nonlinear right-hand sides.
    pub x_domain: (f64, f64),
}

impl std::fmt::Debug for RegistryProblem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RegistryProblem")
            .field("key", &self.key)
            .field("alpha", &self.alpha)
            .field("lower", &self.lower)
            .field("upper", &self.upper)
            .finish_non_exhaustive()
    }
}

impl RegistryProblem {
    pub fn problems(&self) -> (IVProblem, IVProblem) {
        let p1 = IVProblem {
            alpha: self.alpha,
            rhs: self.rhs.clone(),
            y0: self.lower.0,
            y1: self.lower.1,
            horizon: self.horizon,
            lipschitz: self.lipschitz,
        };
        let p2 = p1.with_initial(self.upper.0, self.upper.1);
        (p1, p2)
    }
}

fn linear(
    key: &'static str,
    description: &'static str,
    lower: (f64, f64),
    upper: (f64, f64),
    horizon: f64,
) -> RegistryProblem {
    RegistryProblem {
        key,
        description,
        alpha: 1.5,
        rhs: Arc::new(|_, y| -y),
        lipschitz: 1.0,
        horizon,
        lower,
        upper,
        structure: Structure::Linear(Arc::new(|_| -1.0)),
        x_domain: (-1.0, 1.0),
    }
}

pub fn registry() -> Vec<RegistryProblem> {
    vec![
        linear(
            "example1",
            "D^1.5 y = -y, (0,0) vs (1,0); the solutions meet near t = 1.645",
            (0.0, 0.0),
            (1.0, 0.0),
            3.0,
        ),
        linear(
            "equal_values",
            "D^1.5 y = -y, (1,0) vs (1,0.5)",
            (1.0, 0.0),
            (1.0, 0.5),
            2.0,
        ),
        linear(
            "identical",
            "D^1.5 y = -y, identical data (1,0)",
            (1.0, 0.0),
            (1.0, 0.0),
            2.0,
        ),
        RegistryProblem {
            key: "linear_varying",
            description: "D^1.5 y = (-1 + t/4) y, (0,0) vs (1,0)",
            alpha: 1.5,
            rhs: Arc::new(|t, y| (-1.0 + 0.25 * t) * y),
            lipschitz: 1.0,
            horizon: 1.0,
            lower: (0.0, 0.0),
            upper: (1.0, 0.0),
            structure: Structure::Linear(Arc::new(|t| -1.0 + 0.25 * t)),
            x_domain: (-1.0, 1.0),
        },
        RegistryProblem {
            key: "sine",
            description: "D^1.5 y = -sin y, (0,0) vs (0.5,0)",
            alpha: 1.5,
            rhs: Arc::new(|_, y: f64| -y.sin()),
            lipschitz: 1.0,
            horizon: 1.6,
            lower: (0.0, 0.0),
            upper: (0.5, 0.0),
            structure: Structure::ZeroSolution,
            x_domain: (-20.0, 20.0),
        },
        RegistryProblem {
            key: "sine_shifted",
            description: "D^1.5 y = -sin y, (0.2,0) vs (0.5,0.1)",
            alpha: 1.5,
            rhs: Arc::new(|_, y: f64| -y.sin()),
            lipschitz: 1.0,
            horizon: 1.5,
            lower: (0.2, 0.0),
            upper: (0.5, 0.1),
            structure: Structure::General,
            x_domain: (-20.0, 20.0),
        },
        RegistryProblem {
            key: "arctan",
            description: "D^1.7 y = -2 atan y, (0.1,0) vs (0.6,0.2)",
            alpha: 1.7,
            rhs: Arc::new(|_, y: f64| -2.0 * y.atan()),
            lipschitz: 2.0,
            horizon: 1.0,
            lower: (0.1, 0.0),
            upper: (0.6, 0.2),
            structure: Structure::General,
            x_domain: (-20.0, 20.0),
        },
        RegistryProblem {
            key: "forced",
            description: "D^1.3 y = -y + sin t, (0,0) vs (0.4,0.3)",
            alpha: 1.3,
            rhs: Arc::new(|t: f64, y| -y + t.sin()),
            lipschitz: 1.0,
            horizon: 1.5,
            lower: (0.0, 0.0),
            upper: (0.4, 0.3),
            structure: Structure::General,
            x_domain: (-5.0, 5.0),
        },
    ]
}

pub fn lookup(key: &str) -> Option<RegistryProblem> {
    registry().into_iter().find(|p| p.key == key)
}

/// Everything the demo reports for one registry pair.
#[derive(Debug, Clone)]
pub struct PairAnalysis {
    pub key: &'static str,
    pub separation: SeparationReport,
    /// Refined envelope on `[0, min(T*, T)]`.
    pub envelope: Envelope,
    /// `|y2 - y1|` at the envelope times.
    pub distance: Vec<f64>,
    pub gronwall: Vec<f64>,
    /// Margin used for the sandwich and dominance checks.
    pub eps: f64,
    pub sandwich_ok: bool,
    /// Refined upper bound below the Gronwall bound wherever `a^* <= L`.
    pub gronwall_dominance_ok: bool,
}

/// Solve the pair with `n_steps` (error estimate from `2 n_steps`), then
/// evaluate the envelopes at every `stride`-th node of the fine grid inside
/// the horizon.
pub fn analyze(entry: &RegistryProblem, n_steps: usize, stride: usize) -> Result<PairAnalysis, BoundsError> {
    let (p1, p2) = entry.problems();
    let separation = separation_check(&p1, &p2, n_steps)?;
    let limit = separation.t_star.min(entry.horizon);
    let idx: Vec<usize> = (0..separation.times.len())
        .step_by(stride.max(1))
        .take_while(|&i| separation.times[i] <= limit * (1.0 + 1e-12))
        .collect();
    let times: Vec<f64> = idx.iter().map(|&i| separation.times[i]).collect();
    let distance: Vec<f64> = idx.iter().map(|&i| separation.diff[i].abs()).collect();
    let (d0, d1) = (entry.upper.0 - entry.lower.0, entry.upper.1 - entry.lower.1);
    let search = CoeffSearch::new(entry.x_domain);
    let acc = MlAccuracy::default();

    let envelope = match &entry.structure {
        Structure::Linear(a) => linear_envelope(entry.alpha, |t| a(t), d0.abs(), d1.abs(), &times, &acc)?,
        Structure::ZeroSolution => nonlinear_envelope(&p2, &times, SignCase::Auto, &search)?,
        Structure::General => {
            let y1_sol = fode::solve_ivp(&p1, 2 * n_steps)?;
            shifted_envelope(&p1, &p2, &y1_sol, &times, &search)?
        }
    };
    let gronwall = times
        .iter()
        .map(|&t| gronwall_envelope(entry.alpha, entry.lipschitz, d0.abs(), d1.abs(), t, &acc))
        .collect::<Result<Vec<_>, _>>()?;

    let eps = separation.band;
    let sandwich_ok = envelope.sandwiches(&distance, eps);
    let gronwall_dominance_ok = envelope
        .upper
        .iter()
        .zip(&gronwall)
        .zip(&envelope.coeffs)
        .all(|((u, g), c)| c.a_upper > entry.lipschitz || *u <= g + eps);
    Ok(PairAnalysis {
        key: entry.key,
        separation,
        envelope,
        distance,
        gronwall,
        eps,
        sandwich_ok,
        gronwall_dominance_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn keys_are_unique() {
        let mut keys: Vec<_> = registry().iter().map(|p| p.key).collect();
        keys.sort();
        let n = keys.len();
        keys.dedup();
        assert_eq!(keys.len(), n);
        assert!(lookup("sine").is_some() && lookup("nope").is_none());
    }

    #[test]
    fn data_are_ordered() {
        for p in registry() {
            assert!(p.lower.0 <= p.upper.0 && p.lower.1 <= p.upper.1, "{}", p.key);
        }
    }
}
