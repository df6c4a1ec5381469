//! EG-Anderson(1) and the plain extragradient method.
//!
//! Each iteration takes an extragradient pair `y_half = G_t(x)`,
//! `y_plus = G̃_t(x)` (step `t` from the line search, or fixed). When the
//! extragradient residual `F̃ = y_plus − x` is smaller than both
//! `F = y_half − x` and the decaying budget `ω·σ^{−τ}`, the iterate is
//! extrapolated along the line through `x` and `y_plus` with the coefficient
//! minimizing `‖αF + (1 − α)F̃‖`; otherwise the step is a plain extragradient
//! step. With `ω = 0` the budget is zero and the method is exactly the
//! extragradient method.

use std::time::Instant;

use crate::error::{Result, ViError};
use crate::linalg::{affine_combination, all_finite, dot, norm, norm_sq, sub};
use crate::problem::ViProblem;

use super::line_search::{extragradient_pair, search_with};
use super::monitor::{NoObserver, StepObserver, StepView};
use super::{IterationRecord, SolveResult, SolverConfig, Status, StepKind, DIVERGENCE_THRESHOLD};

/// Denominators below this are treated as zero.
pub const COEFFICIENT_DENOMINATOR_FLOOR: f64 = 1e-300;

/// `α = ⟨F̃, F̃ − F⟩ / ‖F̃ − F‖²`, the unconstrained minimizer of
/// `α ↦ ‖αF + (1 − α)F̃‖`.
pub fn anderson_coefficient(f: &[f64], f_tilde: &[f64]) -> Result<f64> {
    let diff = sub(f_tilde, f);
    let denom = norm_sq(&diff);
    if !(denom >= COEFFICIENT_DENOMINATOR_FLOOR) {
        return Err(ViError::DegenerateCoefficient(denom));
    }
    Ok(dot(f_tilde, &diff) / denom)
}

/// Result of one EG-Anderson(1) iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct StepReport {
    pub x_next: Vec<f64>,
    pub sigma_next: u64,
    pub kind: StepKind,
    pub t: f64,
    pub backtracks: usize,
    /// Coefficient computed when the gate opened; `None` when it stayed shut.
    pub alpha: Option<f64>,
    pub y_half: Vec<f64>,
    pub y_plus: Vec<f64>,
    pub f_norm: f64,
    pub f_tilde_norm: f64,
    pub(crate) projections: u64,
}

/// One iteration from `x` with acceleration counter `sigma`.
pub fn eg_anderson1_step(
    problem: &ViProblem,
    x: &[f64],
    sigma: u64,
    cfg: &SolverConfig,
) -> Result<StepReport> {
    let hx = problem.eval(x)?;
    let (t, y_half, y_plus, backtracks, projections) = match cfg.constant_step {
        Some(t) => {
            let c = extragradient_pair(problem, x, &hx, t);
            (t, c.y_half, c.y_plus, 0, 2)
        }
        None => {
            let ls = search_with(problem, x, &hx, cfg)?;
            (ls.t, ls.y_half, ls.y_plus, ls.backtracks, ls.projections)
        }
    };

    let f = sub(&y_half, x);
    let f_tilde = sub(&y_plus, x);
    let f_norm = norm(&f);
    let f_tilde_norm = norm(&f_tilde);

    let budget = cfg.omega * (sigma as f64).powf(-cfg.tau);
    let gate_open = f_tilde_norm < f_norm && f_tilde_norm < budget;
    // A degenerate denominator falls through to the extragradient branch,
    // as α = M + 1 would.
    let alpha = if gate_open {
        anderson_coefficient(&f, &f_tilde).ok()
    } else {
        None
    };

    let (x_next, sigma_next, kind) = match alpha {
        Some(a) if a.abs() <= cfg.safeguard_m => (
            affine_combination(a, x, &y_plus),
            sigma + 1,
            StepKind::Anderson,
        ),
        _ => (y_plus.clone(), sigma, StepKind::Extragradient),
    };

    Ok(StepReport {
        x_next,
        sigma_next,
        kind,
        t,
        backtracks,
        alpha,
        y_half,
        y_plus,
        f_norm,
        f_tilde_norm,
        projections,
    })
}

/// Runs EG-Anderson(1) from `x0` until the natural residual drops to
/// `cfg.tol`.
pub fn solve_eg_anderson1(problem: &ViProblem, x0: &[f64], cfg: &SolverConfig) -> Result<SolveResult> {
    solve_eg_anderson1_observed(problem, x0, cfg, &mut NoObserver)
}

/// The extragradient method: EG-Anderson(1) with `ω = 0`.
pub fn solve_eg(problem: &ViProblem, x0: &[f64], cfg: &SolverConfig) -> Result<SolveResult> {
    solve_eg_observed(problem, x0, cfg, &mut NoObserver)
}

pub fn solve_eg_observed(
    problem: &ViProblem,
    x0: &[f64],
    cfg: &SolverConfig,
    observer: &mut dyn StepObserver,
) -> Result<SolveResult> {
    let cfg = SolverConfig {
        omega: 0.0,
        ..cfg.clone()
    };
    solve_eg_anderson1_observed(problem, x0, &cfg, observer)
}

/// Natural residual with its evaluation and projection charged to the run.
pub(crate) fn checked_residual(problem: &ViProblem, x: &[f64], projections: &mut u64) -> f64 {
    *projections += 1;
    let mut hx = vec![0.0; x.len()];
    problem.eval_into(x, &mut hx);
    let g = problem.project_step(x, 1.0, &hx);
    norm(&sub(&g, x))
}

pub(crate) fn is_divergent(residual: f64) -> bool {
    !residual.is_finite() || residual > DIVERGENCE_THRESHOLD
}

/// [`solve_eg_anderson1`], reporting every step to `observer`.
pub fn solve_eg_anderson1_observed(
    problem: &ViProblem,
    x0: &[f64],
    cfg: &SolverConfig,
    observer: &mut dyn StepObserver,
) -> Result<SolveResult> {
    cfg.validate()?;
    let start = Instant::now();
    let evals_before = problem.eval_count();
    let mut projections = 1;
    let mut x = problem.set().project(x0)?;
    let mut sigma: u64 = 1;
    let mut trace = Vec::new();

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
        let step = match eg_anderson1_step(problem, &x, sigma, cfg) {
            Ok(s) => s,
            Err(ViError::LineSearchStalled(_)) => {
                status = Some(Status::LineSearchStalled);
                break;
            }
            Err(ViError::Domain(_)) => {
                status = Some(Status::Diverged);
                break;
            }
            Err(e) => return Err(e),
        };
        projections += step.projections;
        observer.observe(&StepView {
            k,
            x: &x,
            y_half: &step.y_half,
            y_plus: &step.y_plus,
            x_next: &step.x_next,
            t: step.t,
            f_norm: step.f_norm,
            f_tilde_norm: step.f_tilde_norm,
            alpha: step.alpha,
            kind: step.kind,
            sigma,
        });

        x = step.x_next;
        residual = if all_finite(&x) {
            checked_residual(problem, &x, &mut projections)
        } else {
            f64::NAN
        };
        k += 1;
        trace.push(IterationRecord {
            iter: k,
            residual,
            t: step.t,
            backtracks: step.backtracks,
            alpha: step.alpha,
            step_kind: step.kind,
            sigma,
            f_norm: step.f_norm,
            f_tilde_norm: step.f_tilde_norm,
            h_evals: problem.eval_count() - evals_before,
            elapsed_ns: start.elapsed().as_nanos(),
        });
        sigma = step.sigma_next;

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
    fn coefficient_examples() {
        assert_eq!(anderson_coefficient(&[1.0, 2.0], &[0.0, 0.0]).unwrap(), 0.0);
        let a = anderson_coefficient(&[1.0, 0.0], &[0.0, 0.5]).unwrap();
        assert!((a - 0.2).abs() < 1e-15);
        let a = anderson_coefficient(&[3.0, -4.0], &[-3.0, 4.0]).unwrap();
        assert!((a - 0.5).abs() < 1e-15);
    }

    #[test]
    fn coefficient_degenerate() {
        assert!(matches!(
            anderson_coefficient(&[1.0, 1.0], &[1.0, 1.0]),
            Err(ViError::DegenerateCoefficient(_))
        ));
    }

    #[test]
    fn coefficient_minimizes_combination_norm() {
        let f = [0.3, -1.2, 0.8];
        let ft = [0.1, 0.4, -0.2];
        let a = anderson_coefficient(&f, &ft).unwrap();
        let obj = |a: f64| norm(&affine_combination(a, &f, &ft));
        for da in [-1e-3, 1e-3] {
            assert!(obj(a) <= obj(a + da));
        }
    }

    fn affine_1d() -> ViProblem {
        ViProblem::new(
            FnOperator::new(1, |x: &[f64], out: &mut [f64]| out[0] = x[0] - 2.0),
            FeasibleSet::orthant(1),
        )
        .unwrap()
    }

    #[test]
    fn closed_gate_takes_extragradient_step() {
        // H(x) = x − 2 from x = 0 with t = 1: F = 2, F̃ = 0 < ‖F‖, but ω = 0.
        let p = affine_1d();
        let cfg = SolverConfig {
            omega: 0.0,
            ..SolverConfig::with_constant_step(1.0)
        };
        let s = eg_anderson1_step(&p, &[0.0], 4, &cfg).unwrap();
        assert_eq!(s.kind, StepKind::Extragradient);
        assert_eq!(s.x_next, s.y_plus);
        assert_eq!(s.sigma_next, 4);
        assert_eq!(s.alpha, None);
    }

    #[test]
    fn zero_coefficient_lands_on_extragradient_point() {
        // F̃ = 0 so α = 0: accelerated step coinciding with y_plus.
        let p = affine_1d();
        let cfg = SolverConfig::with_constant_step(1.0);
        let s = eg_anderson1_step(&p, &[0.0], 1, &cfg).unwrap();
        assert_eq!(s.kind, StepKind::Anderson);
        assert_eq!(s.alpha, Some(0.0));
        assert_eq!(s.x_next, s.y_plus);
        assert_eq!(s.sigma_next, 2);
    }

    #[test]
    fn eg_hand_recursion_1d() {
        // t = 0.5, x0 = 0: y_half = max(0, 0 − 0.5·(−2)) = 1,
        // x1 = max(0, 0 − 0.5·(1 − 2)) = 0.5.
        let p = affine_1d();
        let cfg = SolverConfig {
            max_iter: 1,
            ..SolverConfig::with_constant_step(0.5)
        };
        let r = solve_eg(&p, &[0.0], &cfg).unwrap();
        assert_eq!(r.x_final, vec![0.5]);
        assert_eq!(r.status, Status::MaxIterations);
        // Second step by hand from 0.5: y_half = 0.5 + 0.75 = 1.25,
        // x2 = 0.5 − 0.5·(1.25 − 2) = 0.875.
        let cfg = SolverConfig { max_iter: 2, ..cfg };
        let r = solve_eg(&p, &[0.0], &cfg).unwrap();
        assert_eq!(r.x_final, vec![0.875]);
    }

    #[test]
    fn zero_operator_converges_immediately() {
        let p = ViProblem::new(
            FnOperator::new(3, |_: &[f64], out: &mut [f64]| out.fill(0.0)),
            FeasibleSet::orthant(3),
        )
        .unwrap();
        let r = solve_eg(&p, &[1.0, 2.0, 3.0], &SolverConfig::default()).unwrap();
        assert_eq!(r.status, Status::Converged);
        assert_eq!(r.iterations, 0);
        assert!(r.trace.is_empty());
    }

    #[test]
    fn infeasible_start_is_projected() {
        let p = affine_1d();
        let r = solve_eg(&p, &[-5.0], &SolverConfig { max_iter: 1, ..SolverConfig::with_constant_step(0.5) })
            .unwrap();
        assert_eq!(r.x_final, vec![0.5]);
    }

    #[test]
    fn converges_on_affine_problem() {
        let p = affine_1d();
        let r = solve_eg_anderson1(&p, &[7.0], &SolverConfig::with_gamma(1.0)).unwrap();
        assert!(r.converged());
        assert!((r.x_final[0] - 2.0).abs() < 1e-8);
        assert!(r.final_residual <= 1e-8);
        assert_eq!(r.trace.last().unwrap().residual, r.final_residual);
    }
}
