//! Variational inequality problems `VI(Ω, H)` and the residual maps built
//! on them.
//!
//! For a step `t > 0` the solvers work with
//!
//! ```text
//! G_t(x) = P_Ω(x − t·H(x))          F_t(x) = G_t(x) − x
//! G̃_t(x) = P_Ω(x − t·H(G_t(x)))     F̃_t(x) = G̃_t(x) − x
//! ```
//!
//! and with the natural residual `‖F_1(x)‖`, which vanishes exactly on the
//! solution set.

use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use crate::error::{check_dim, Result, ViError};
use crate::linalg::{norm, step, sub};
use crate::set::FeasibleSet;

/// An evaluatable map `H: ℝⁿ → ℝⁿ`.
///
/// Implementations write `H(x)` into `out`. Points where `H` is undefined
/// should produce non-finite output; the solvers treat that as divergence.
pub trait Operator: Send + Sync {
    fn dim(&self) -> usize;

    fn apply_into(&self, x: &[f64], out: &mut [f64]);
}

/// Adapts a closure into an [`Operator`].
pub struct FnOperator<F> {
    n: usize,
    f: F,
}

impl<F> FnOperator<F>
where
    F: Fn(&[f64], &mut [f64]) + Send + Sync,
{
    pub fn new(n: usize, f: F) -> Self {
        Self { n, f }
    }
}

impl<F> Operator for FnOperator<F>
where
    F: Fn(&[f64], &mut [f64]) + Send + Sync,
{
    fn dim(&self) -> usize {
        self.n
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        (self.f)(x, out)
    }
}

/// `VI(Ω, H)`: find `x* ∈ Ω` with `⟨H(x*), x − x*⟩ ≥ 0` for all `x ∈ Ω`.
///
/// Every evaluation of `H` through [`ViProblem::eval`] bumps an atomic
/// counter, so benchmark evaluation counts cover residual checks as well as
/// solver steps.
pub struct ViProblem {
    operator: Box<dyn Operator>,
    set: FeasibleSet,
    lipschitz: Option<f64>,
    known_solution: Option<Vec<f64>>,
    evals: AtomicU64,
}

impl fmt::Debug for ViProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ViProblem")
            .field("dim", &self.dim())
            .field("set", &self.set)
            .field("lipschitz", &self.lipschitz)
            .field("has_known_solution", &self.known_solution.is_some())
            .field("evals", &self.eval_count())
            .finish()
    }
}

impl ViProblem {
    pub fn new(operator: impl Operator + 'static, set: FeasibleSet) -> Result<Self> {
        check_dim(set.dim(), operator.dim())?;
        Ok(Self {
            operator: Box::new(operator),
            set,
            lipschitz: None,
            known_solution: None,
            evals: AtomicU64::new(0),
        })
    }

    pub fn with_lipschitz(mut self, l: f64) -> Result<Self> {
        if !(l >= 0.0 && l.is_finite()) {
            return Err(ViError::InvalidParameter {
                name: "lipschitz",
                reason: format!("must be finite and nonnegative, got {l}"),
            });
        }
        self.lipschitz = Some(l);
        Ok(self)
    }

    pub fn with_known_solution(mut self, x: Vec<f64>) -> Result<Self> {
        check_dim(self.dim(), x.len())?;
        self.known_solution = Some(x);
        Ok(self)
    }

    pub fn dim(&self) -> usize {
        self.set.dim()
    }

    pub fn set(&self) -> &FeasibleSet {
        &self.set
    }

    pub fn lipschitz(&self) -> Option<f64> {
        self.lipschitz
    }

    pub fn known_solution(&self) -> Option<&[f64]> {
        self.known_solution.as_deref()
    }

    /// Number of `H` evaluations charged so far.
    pub fn eval_count(&self) -> u64 {
        self.evals.load(Ordering::Relaxed)
    }

    pub fn reset_eval_count(&self) {
        self.evals.store(0, Ordering::Relaxed);
    }

    /// Evaluates `H(x)`, charging one evaluation.
    pub fn eval(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        let mut out = vec![0.0; x.len()];
        self.eval_into(x, &mut out);
        Ok(out)
    }

    pub(crate) fn eval_into(&self, x: &[f64], out: &mut [f64]) {
        self.evals.fetch_add(1, Ordering::Relaxed);
        self.operator.apply_into(x, out);
    }

    /// `P_Ω(x − t·d)`
    pub(crate) fn project_step(&self, x: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
        let mut y = step(x, t, d);
        self.set.project_in_place(&mut y);
        y
    }
}

/// `G_t(x)` and `F_t(x)`, optionally extended with `G̃_t(x)` and `F̃_t(x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ResidualPair {
    pub y_half: Vec<f64>,
    pub f: Vec<f64>,
    pub y_plus: Option<Vec<f64>>,
    pub f_tilde: Option<Vec<f64>>,
}

fn check_step(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(ViError::InvalidParameter {
            name: "t",
            reason: format!("step must be positive and finite, got {t}"),
        })
    }
}

/// Computes `y_half = G_t(x)` and `F = y_half − x` with one `H` evaluation.
pub fn compute_f(problem: &ViProblem, x: &[f64], t: f64) -> Result<ResidualPair> {
    check_step(t)?;
    let hx = problem.eval(x)?;
    let y_half = problem.project_step(x, t, &hx);
    let f = sub(&y_half, x);
    Ok(ResidualPair {
        y_half,
        f,
        y_plus: None,
        f_tilde: None,
    })
}

/// Extends `pair` (from [`compute_f`] at the same `x` and `t`) with
/// `y_plus = G̃_t(x)` and `F̃ = y_plus − x`, charging one `H` evaluation.
pub fn compute_f_tilde(
    problem: &ViProblem,
    x: &[f64],
    t: f64,
    pair: ResidualPair,
) -> Result<ResidualPair> {
    check_step(t)?;
    check_dim(problem.dim(), x.len())?;
    check_dim(problem.dim(), pair.y_half.len())?;
    let h_half = problem.eval(&pair.y_half)?;
    let y_plus = problem.project_step(x, t, &h_half);
    let f_tilde = sub(&y_plus, x);
    Ok(ResidualPair {
        y_plus: Some(y_plus),
        f_tilde: Some(f_tilde),
        ..pair
    })
}

/// `‖x − P_Ω(x − H(x))‖`, evaluating `H` afresh.
pub fn natural_residual(problem: &ViProblem, x: &[f64]) -> Result<f64> {
    Ok(norm(&compute_f(problem, x, 1.0)?.f))
}
