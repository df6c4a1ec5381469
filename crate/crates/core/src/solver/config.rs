use serde::{Deserialize, Serialize};

use crate::error::{Result, ViError};

/// Parameters of the extragradient / Anderson solvers.
///
/// The defaults are the experiment settings: `ω = 30`, `M = 5000`,
/// `τ = 0.6`, `ρ = 0.8`, `μ = 0.5`, tolerance `1e-8` on the natural residual
/// and at most `10⁴` iterations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    /// Initial trial step `γ` of the line search.
    pub gamma: f64,
    /// Scale `ω` of the acceleration budget `ω·σ^{−τ}`.
    pub omega: f64,
    /// Safeguard `M` on the Anderson coefficient.
    pub safeguard_m: f64,
    /// Decay exponent `τ > 1/2` of the acceleration budget.
    pub tau: f64,
    /// Backtracking factor `ρ ∈ (0, 1)`.
    pub rho: f64,
    /// Line-search constant `μ ∈ (0, 1)`.
    pub mu: f64,
    pub tol: f64,
    pub max_iter: usize,
    /// Fixed step `t`; disables the line search when set.
    pub constant_step: Option<f64>,
    pub max_backtracks: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            gamma: 1.0,
            omega: 30.0,
            safeguard_m: 5000.0,
            tau: 0.6,
            rho: 0.8,
            mu: 0.5,
            tol: 1e-8,
            max_iter: 10_000,
            constant_step: None,
            max_backtracks: 60,
        }
    }
}

fn invalid(name: &'static str, reason: String) -> ViError {
    ViError::InvalidParameter { name, reason }
}

impl SolverConfig {
    pub fn with_gamma(gamma: f64) -> Self {
        Self {
            gamma,
            ..Self::default()
        }
    }

    pub fn with_constant_step(t: f64) -> Self {
        Self {
            constant_step: Some(t),
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name, v: f64| {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(invalid(name, format!("must be positive and finite, got {v}")))
            }
        };
        let open_unit = |name, v: f64| {
            if v > 0.0 && v < 1.0 {
                Ok(())
            } else {
                Err(invalid(name, format!("must lie in (0, 1), got {v}")))
            }
        };
        positive("gamma", self.gamma)?;
        if !(self.omega >= 0.0 && self.omega.is_finite()) {
            return Err(invalid("omega", format!("must be nonnegative, got {}", self.omega)));
        }
        positive("safeguard_m", self.safeguard_m)?;
        if !(self.tau > 0.5 && self.tau.is_finite()) {
            return Err(invalid("tau", format!("must exceed 1/2, got {}", self.tau)));
        }
        open_unit("rho", self.rho)?;
        open_unit("mu", self.mu)?;
        positive("tol", self.tol)?;
        if self.max_iter == 0 {
            return Err(invalid("max_iter", "must be at least 1".into()));
        }
        if self.max_backtracks == 0 {
            return Err(invalid("max_backtracks", "must be at least 1".into()));
        }
        if let Some(t) = self.constant_step {
            positive("constant_step", t)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_match_experiment_settings() {
        let cfg = SolverConfig::default();
        assert_eq!(
            (cfg.omega, cfg.safeguard_m, cfg.tau, cfg.rho, cfg.mu),
            (30.0, 5000.0, 0.6, 0.8, 0.5)
        );
        assert_eq!((cfg.tol, cfg.max_iter, cfg.max_backtracks), (1e-8, 10_000, 60));
        cfg.validate().unwrap();
    }

    #[test]
    fn rejects_out_of_range_parameters() {
        let bad = [
            SolverConfig { tau: 0.5, ..Default::default() },
            SolverConfig { rho: 1.0, ..Default::default() },
            SolverConfig { mu: 0.0, ..Default::default() },
            SolverConfig { gamma: -1.0, ..Default::default() },
            SolverConfig { omega: -0.1, ..Default::default() },
            SolverConfig { max_iter: 0, ..Default::default() },
            SolverConfig { constant_step: Some(0.0), ..Default::default() },
        ];
        for cfg in bad {
            assert!(cfg.validate().is_err(), "{cfg:?}");
        }
    }
}
