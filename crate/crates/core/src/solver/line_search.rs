//! Backtracking search for the extragradient step size.
//!
//! Starting from `t = γ`, the step is shrunk by `ρ` until
//!
//! ```text
//! t·⟨H(y_half) − H(x), y_half − y_plus⟩ ≤ (μ/2)·(‖x − y_half‖² + ‖y_half − y_plus‖²)
//! ```
//!
//! holds, where `y_half = P_Ω(x − tH(x))` and `y_plus = P_Ω(x − tH(y_half))`.

use crate::error::{Result, ViError};
use crate::linalg::{all_finite, dist_sq};
use crate::problem::ViProblem;

use super::SolverConfig;

/// Accepted step together with the two extragradient points it produced.
#[derive(Debug, Clone, PartialEq)]
pub struct LineSearchOutcome {
    pub t: f64,
    pub y_half: Vec<f64>,
    pub y_plus: Vec<f64>,
    /// Number of reductions `m`, so that `t = γ·ρ^m`.
    pub backtracks: usize,
    pub(crate) projections: u64,
}

/// Both sides of the acceptance test, `(lhs, rhs)`.
pub fn acceptance_sides(
    t: f64,
    mu: f64,
    x: &[f64],
    hx: &[f64],
    y_half: &[f64],
    h_half: &[f64],
    y_plus: &[f64],
) -> (f64, f64) {
    let inner: f64 = h_half
        .iter()
        .zip(hx)
        .zip(y_half.iter().zip(y_plus))
        .map(|((hh, hx), (yh, yp))| (hh - hx) * (yh - yp))
        .sum();
    let lhs = t * inner;
    let rhs = 0.5 * mu * (dist_sq(x, y_half) + dist_sq(y_half, y_plus));
    (lhs, rhs)
}

pub(crate) struct Candidate {
    pub y_half: Vec<f64>,
    pub h_half: Vec<f64>,
    pub y_plus: Vec<f64>,
}

/// Computes the extragradient pair at step `t` given `H(x)`; charges one
/// evaluation of `H` and two projections.
pub(crate) fn extragradient_pair(problem: &ViProblem, x: &[f64], hx: &[f64], t: f64) -> Candidate {
    let y_half = problem.project_step(x, t, hx);
    let mut h_half = vec![0.0; x.len()];
    problem.eval_into(&y_half, &mut h_half);
    let y_plus = problem.project_step(x, t, &h_half);
    Candidate {
        y_half,
        h_half,
        y_plus,
    }
}

pub(crate) fn search_with(
    problem: &ViProblem,
    x: &[f64],
    hx: &[f64],
    cfg: &SolverConfig,
) -> Result<LineSearchOutcome> {
    let mut t = cfg.gamma;
    let mut projections = 0;
    for m in 0..=cfg.max_backtracks {
        let c = extragradient_pair(problem, x, hx, t);
        projections += 2;
        if !all_finite(&c.h_half) || !all_finite(&c.y_plus) {
            return Err(ViError::Domain(format!(
                "non-finite operator value during line search at t = {t:e}"
            )));
        }
        let (lhs, rhs) = acceptance_sides(t, cfg.mu, x, hx, &c.y_half, &c.h_half, &c.y_plus);
        if lhs <= rhs {
            return Ok(LineSearchOutcome {
                t,
                y_half: c.y_half,
                y_plus: c.y_plus,
                backtracks: m,
                projections,
            });
        }
        t *= cfg.rho;
    }
    Err(ViError::LineSearchStalled(cfg.max_backtracks))
}

/// Runs the backtracking search at `x`.
///
/// `H(x)` is evaluated once and reused across trial steps; each trial then
/// costs one more evaluation. Fails with [`ViError::LineSearchStalled`] once
/// more than `cfg.max_backtracks` reductions would be needed.
pub fn line_search(problem: &ViProblem, x: &[f64], cfg: &SolverConfig) -> Result<LineSearchOutcome> {
    cfg.validate()?;
    let hx = problem.eval(x)?;
    search_with(problem, x, &hx, cfg)
}
