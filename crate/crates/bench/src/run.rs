//! Turning a problem spec plus step settings into a solver configuration.

use serde::{Deserialize, Serialize};
use thiserror::Error;
use vi_core::problems::{ProblemSpec, SpecError};
use vi_core::solver::{Method, SolveResult, SolverConfig};
use vi_core::{ViError, ViProblem};

/// Fraction of `1/L` used as the fixed step when no `γ` is given.
pub const DEFAULT_LIPSCHITZ_FRACTION: f64 = 0.7;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Solver(#[from] ViError),
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed plan: {0}")]
    Plan(#[from] serde_json::Error),
}

/// How the step size is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepRule {
    /// Backtracking line search from `γ`.
    Gamma(f64),
    /// Constant step `fraction / L`; needs a known Lipschitz constant.
    LipschitzFraction(f64),
}

impl StepRule {
    /// `γ` if given, otherwise `0.7/L` when the instance knows `L`.
    pub fn resolve(gamma: Option<f64>, fraction: Option<f64>, problem: &ViProblem) -> Result<Self, BenchError> {
        match (gamma, fraction) {
            (Some(_), Some(_)) => Err(BenchError::Usage("give either a gamma or a Lipschitz fraction, not both".into())),
            (Some(g), None) => Ok(Self::Gamma(g)),
            (None, Some(f)) => Ok(Self::LipschitzFraction(f)),
            (None, None) if problem.lipschitz().is_some() => Ok(Self::LipschitzFraction(DEFAULT_LIPSCHITZ_FRACTION)),
            (None, None) => Err(BenchError::Usage(
                "missing required `gamma` (this family has no known Lipschitz constant)".into(),
            )),
        }
    }

    pub fn config(self, problem: &ViProblem, tol: f64, max_iter: usize) -> Result<SolverConfig, BenchError> {
        let base = match self {
            Self::Gamma(g) => SolverConfig::with_gamma(g),
            Self::LipschitzFraction(f) => {
                let l = problem
                    .lipschitz()
                    .ok_or_else(|| BenchError::Usage("a Lipschitz step needs an instance with known L".into()))?;
                SolverConfig::with_constant_step(f / l)
            }
        };
        let cfg = SolverConfig { tol, max_iter, ..base };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// One solver run from the start point drawn with `x0_seed`.
pub fn run_once(
    spec: &ProblemSpec,
    problem: &ViProblem,
    method: Method,
    x0_seed: u64,
    cfg: &SolverConfig,
) -> Result<SolveResult, BenchError> {
    let x0 = spec.initial_point(x0_seed);
    Ok(method.solve(problem, &x0, cfg)?)
}

pub(crate) fn read_file(path: &str) -> Result<String, BenchError> {
    std::fs::read_to_string(path).map_err(|source| BenchError::Io {
        path: path.to_string(),
        source,
    })
}

/// Parses a spec given either inline (starting with `{`) or as a file path.
pub fn load_spec(arg: &str) -> Result<ProblemSpec, BenchError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        read_file(arg)?
    };
    Ok(ProblemSpec::from_json(&text)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use vi_core::problems::Family;

    #[test]
    fn harker_pang_defaults_to_lipschitz_step() {
        let spec = ProblemSpec::new(Family::HarkerPang, 5, 1);
        let p = spec.build().unwrap();
        let rule = StepRule::resolve(None, None, &p).unwrap();
        assert_eq!(rule, StepRule::LipschitzFraction(0.7));
        let cfg = rule.config(&p, 1e-8, 10).unwrap();
        assert!((cfg.constant_step.unwrap() - 0.7 / p.lipschitz().unwrap()).abs() < 1e-15);
    }

    #[test]
    fn ncp_needs_gamma() {
        let p = ProblemSpec::new(Family::Ncp, 5, 1).build().unwrap();
        let err = StepRule::resolve(None, None, &p).unwrap_err();
        assert!(err.to_string().contains("gamma"));
        assert_eq!(StepRule::resolve(Some(0.27), None, &p).unwrap(), StepRule::Gamma(0.27));
    }

    #[test]
    fn inline_and_file_specs() {
        let s = load_spec(r#"{"family":"NCP","n":4,"seed":2}"#).unwrap();
        assert_eq!(s.n, 4);
        assert!(matches!(load_spec("/nonexistent/spec.json"), Err(BenchError::Io { .. })));
    }
}
