//! Anderson(1) applied to the projection fixed-point map
//! `G(x) = P_Ω(x − t·H(x))` with a fixed step `t`.

use std::time::Instant;

use crate::error::Result;
use crate::linalg::{affine_combination, all_finite, dot, norm, norm_sq, sub};
use crate::problem::ViProblem;

use super::extragradient::{checked_residual, is_divergent, COEFFICIENT_DENOMINATOR_FLOOR};
use super::{IterationRecord, SolveResult, SolverConfig, Status, StepKind};

/// Previous iterate's map value and residual `F = G(x) − x`.
#[derive(Debug, Clone)]
pub struct AndersonMemory {
    pub g_prev: Vec<f64>,
    pub f_prev: Vec<f64>,
}

/// Weight `θ` on the older residual minimizing `‖θ·F_prev + (1 − θ)·F‖`,
/// or `None` when `F_prev = F` (numerically).
pub fn anderson1_weight(f_prev: &[f64], f: &[f64]) -> Option<f64> {
    let d = sub(f_prev, f);
    let denom = norm_sq(&d);
    if denom >= COEFFICIENT_DENOMINATOR_FLOOR {
        Some(-dot(f, &d) / denom)
    } else {
        None
    }
}

/// Runs Anderson(1): `x₁ = G(x₀)`, then
/// `x_{k+1} = θ·G(x_{k−1}) + (1 − θ)·G(x_k)` with the least-squares weight
/// `θ`, falling back to `x_{k+1} = G(x_k)` when the residuals coincide.
///
/// The step is `cfg.constant_step` if set and `cfg.gamma` otherwise. No line
/// search or safeguard is applied, so the iteration can diverge.
pub fn solve_anderson1(problem: &ViProblem, x0: &[f64], cfg: &SolverConfig) -> Result<SolveResult> {
    cfg.validate()?;
    let t = cfg.constant_step.unwrap_or(cfg.gamma);
    let start = Instant::now();
    let evals_before = problem.eval_count();
    let mut projections = 1;
    let mut x = problem.set().project(x0)?;
    let mut memory: Option<AndersonMemory> = None;
    let mut sigma: u64 = 1;
    let mut trace = Vec::new();
    let mut hx = vec![0.0; x.len()];

    let mut residual = checked_residual(problem, &x, &mut projections);
    let mut status = if residual <= cfg.tol {
        Some(Status::Converged)
    } else if is_divergent(residual) {
        Some(Status::Diverged)
    } else {
        None
    };

    let mut k = 0;
    while status.is_none() {
        if k == cfg.max_iter {
            status = Some(Status::MaxIterations);
            break;
        }
        problem.eval_into(&x, &mut hx);
        let g = problem.project_step(&x, t, &hx);
        projections += 1;
        let f = sub(&g, &x);
        let f_norm = norm(&f);

        let weight = memory.as_ref().and_then(|m| anderson1_weight(&m.f_prev, &f));
        let (x_next, kind) = match (weight, &memory) {
            (Some(theta), Some(m)) => (affine_combination(theta, &m.g_prev, &g), StepKind::Anderson),
            _ => (g.clone(), StepKind::FixedPoint),
        };
        let step_sigma = sigma;
        if kind == StepKind::Anderson {
            sigma += 1;
        }
        memory = Some(AndersonMemory { g_prev: g, f_prev: f });
        x = x_next;

        residual = if all_finite(&x) {
            checked_residual(problem, &x, &mut projections)
        } else {
            f64::NAN
        };
        k += 1;
        trace.push(IterationRecord {
            iter: k,
            residual,
            t,
            backtracks: 0,
            alpha: weight,
            step_kind: kind,
            sigma: step_sigma,
            f_norm,
            f_tilde_norm: f_norm,
            h_evals: problem.eval_count() - evals_before,
            elapsed_ns: start.elapsed().as_nanos(),
        });

        if residual <= cfg.tol {
            status = Some(Status::Converged);
        } else if is_divergent(residual) {
            status = Some(Status::Diverged);
        }
    }

    Ok(SolveResult {
        x_final: x,
        status: status.expect("loop exits with a status"),
        iterations: k,
        final_residual: residual,
        trace,
        h_evals: problem.eval_count() - evals_before,
        projections,
        elapsed_ns: start.elapsed().as_nanos(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problem::FnOperator;
    use crate::set::FeasibleSet;

    #[test]
    fn weight_for_equal_residuals_is_degenerate() {
        assert_eq!(anderson1_weight(&[1.0, -2.0], &[1.0, -2.0]), None);
    }

    #[test]
    fn weight_minimizes_mixed_residual() {
        let fp = [1.0, 0.5];
        let f = [-0.4, 0.2];
        let theta = anderson1_weight(&fp, &f).unwrap();
        let obj = |th: f64| norm(&affine_combination(th, &fp, &f));
        assert!(obj(theta) <= obj(theta + 1e-4));
        assert!(obj(theta) <= obj(theta - 1e-4));
    }

    #[test]
    fn fixed_point_start_converges_at_once() {
        let p = ViProblem::new(
            FnOperator::new(1, |x: &[f64], out: &mut [f64]| out[0] = x[0] - 2.0),
            FeasibleSet::orthant(1),
        )
        .unwrap();
        let r = solve_anderson1(&p, &[2.0], &SolverConfig::with_gamma(0.5)).unwrap();
        assert_eq!(r.status, Status::Converged);
        assert_eq!(r.iterations, 0);
    }

    #[test]
    fn linear_problem_is_solved_in_few_steps() {
        // For an affine G, Anderson(1) with exact arithmetic is a secant
        // method; on a 1-D problem it lands on the fixed point at step two.
        let p = ViProblem::new(
            FnOperator::new(1, |x: &[f64], out: &mut [f64]| out[0] = 3.0 * x[0] - 6.0),
            FeasibleSet::orthant(1),
        )
        .unwrap();
        let r = solve_anderson1(&p, &[10.0], &SolverConfig::with_gamma(0.1)).unwrap();
        assert!(r.converged());
        assert!(r.iterations <= 3, "{}", r.iterations);
        assert_eq!(r.trace[0].step_kind, StepKind::FixedPoint);
        assert_eq!(r.trace[1].step_kind, StepKind::Anderson);
    }

    #[test]
    fn constant_residual_uses_plain_step() {
        // H constant on the interior: G(x) − x is the same at every point,
        // so the second step has a degenerate weight.
        let p = ViProblem::new(
            FnOperator::new(1, |_: &[f64], out: &mut [f64]| out[0] = 1.0),
            FeasibleSet::uniform_box(1, 0.0, 100.0).unwrap(),
        )
        .unwrap();
        let cfg = SolverConfig {
            max_iter: 2,
            ..SolverConfig::with_gamma(1.0)
        };
        let r = solve_anderson1(&p, &[50.0], &cfg).unwrap();
        assert_eq!(r.trace[1].step_kind, StepKind::FixedPoint);
        assert_eq!(r.trace[1].alpha, None);
        assert_eq!(r.x_final, vec![48.0]);
    }
}
