use std::path::{Path, PathBuf};

use mlsep::fode::IVProblem;
use mlsep::registry;
use serde::Deserialize;

use crate::CliError;

pub fn load<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn default_n_steps() -> usize {
    1024
}

fn default_stride() -> usize {
    32
}

fn default_correctors() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DemoConfig {
    pub problem: String,
    #[serde(default = "default_n_steps")]
    pub n_steps: usize,
    #[serde(default = "default_stride")]
    pub stride: usize,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum RhsSpec {
    /// `lambda y`
    Linear { lambda: f64 },
    /// `-k sin y`
    Sine { k: f64 },
    /// `-k atan y`
    Arctan { k: f64 },
    /// `lambda y + amplitude sin t`
    Forced { lambda: f64, amplitude: f64 },
}

impl RhsSpec {
    pub fn lipschitz(self) -> f64 {
        match self {
            RhsSpec::Linear { lambda } | RhsSpec::Forced { lambda, .. } => lambda.abs(),
            RhsSpec::Sine { k } | RhsSpec::Arctan { k } => k.abs(),
        }
    }
}

#[derive(Debug, Clone, Copy, Deserialize, Default, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Lower,
    #[default]
    Upper,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveConfig {
    /// Registry key; when set, `side` picks the initial data.
    #[serde(default)]
    pub problem: Option<String>,
    #[serde(default)]
    pub side: Side,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub rhs: Option<RhsSpec>,
    #[serde(default)]
    pub y0: Option<f64>,
    #[serde(default)]
    pub y1: Option<f64>,
    #[serde(default)]
    pub horizon: Option<f64>,
    #[serde(default = "default_n_steps")]
    pub n_steps: usize,
    #[serde(default = "default_correctors")]
    pub correctors: u32,
    #[serde(default)]
    pub out_dir: Option<PathBuf>,
}

impl SolveConfig {
    pub fn problem(&self) -> Result<IVProblem, CliError> {
        if let Some(key) = &self.problem {
            let entry = registry::lookup(key).ok_or_else(|| CliError::Usage(format!("unknown problem '{key}'")))?;
            let (p1, p2) = entry.problems();
            return Ok(if self.side == Side::Lower { p1 } else { p2 });
        }
        let need = |v: Option<f64>, name: &str| v.ok_or_else(|| CliError::Usage(format!("missing '{name}'")));
        let rhs = self.rhs.ok_or_else(|| CliError::Usage("missing 'rhs'".into()))?;
        let alpha = need(self.alpha, "alpha")?;
        let y0 = need(self.y0, "y0")?;
        let y1 = need(self.y1, "y1")?;
        let horizon = need(self.horizon, "horizon")?;
        let l = rhs.lipschitz();
        let p = match rhs {
            RhsSpec::Linear { lambda } => IVProblem::new(alpha, move |_, y| lambda * y, y0, y1, horizon, l),
            RhsSpec::Sine { k } => IVProblem::new(alpha, move |_, y: f64| -k * y.sin(), y0, y1, horizon, l),
            RhsSpec::Arctan { k } => IVProblem::new(alpha, move |_, y: f64| -k * y.atan(), y0, y1, horizon, l),
            RhsSpec::Forced { lambda, amplitude } => IVProblem::new(
                alpha,
                move |t: f64, y| lambda * y + amplitude * t.sin(),
                y0,
                y1,
                horizon,
                l,
            ),
        };
        p.map_err(|e| CliError::Usage(e.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_explicit_problem() {
        let c: SolveConfig =
            serde_json::from_str(r#"{"alpha": 1.5, "rhs": {"kind": "sine", "k": 2}, "y0": 1, "y1": 0, "horizon": 2}"#)
                .unwrap();
        let p = c.problem().unwrap();
        assert_eq!(p.lipschitz, 2.0);
        assert_eq!(c.n_steps, 1024);
        assert!(((p.rhs)(0.0, 1.0) + 2.0 * 1f64.sin()).abs() < 1e-15);
    }

    #[test]
    fn rejects_unknown_fields_and_gaps() {
        assert!(serde_json::from_str::<DemoConfig>(r#"{"problem": "sine", "stepz": 3}"#).is_err());
        let c: SolveConfig = serde_json::from_str(r#"{"alpha": 1.5}"#).unwrap();
        assert!(matches!(c.problem(), Err(CliError::Usage(_))));
    }
}
