//! Per-step observation hooks, and a monitor that checks the inequalities
//! the extragradient analysis guarantees along every run.

use crate::linalg::dist_sq;

use super::{SolverConfig, StepKind};

/// Everything a step produced, borrowed for the duration of the callback.
#[derive(Debug)]
pub struct StepView<'a> {
    /// Zero-based index `k` of the step `x_k → x_{k+1}`.
    pub k: usize,
    pub x: &'a [f64],
    pub y_half: &'a [f64],
    pub y_plus: &'a [f64],
    pub x_next: &'a [f64],
    pub t: f64,
    pub f_norm: f64,
    pub f_tilde_norm: f64,
    pub alpha: Option<f64>,
    pub kind: StepKind,
    pub sigma: u64,
}

pub trait StepObserver {
    fn observe(&mut self, step: &StepView<'_>);
}

impl<F: FnMut(&StepView<'_>)> StepObserver for F {
    fn observe(&mut self, step: &StepView<'_>) {
        self(step)
    }
}

/// Observer that ignores every step.
pub struct NoObserver;

impl StepObserver for NoObserver {
    fn observe(&mut self, _: &StepView<'_>) {}
}

pub const SANDWICH_SLACK: f64 = 1e-10;
pub const DESCENT_SLACK: f64 = 1e-9;

/// Counts violations of the step-wise guarantees of EG-Anderson(1):
///
/// * sandwich: `(1 − c)‖F‖ ≤ ‖F̃‖ ≤ (1 + c)‖F‖` with `c = √(μ/(2 − μ))`;
/// * descent (needs `x*`): `‖y⁺ − x*‖² ≤ ‖x − x*‖² − (1 − μ)(‖y½ − x‖² + ‖y⁺ − y½‖²)`;
/// * quasi-Fejér (needs `x*`): `‖x_{k+1} − x*‖² ≤ ‖x_k − x*‖² + ε_k`, with
///   `ε_k = 0` on extragradient steps and `M(M + 1)ω²(1 + i)^{−2τ}` on the
///   `i`-th accelerated step;
/// * gate discipline: accelerated steps only with `‖F̃‖ < ‖F‖`,
///   `‖F̃‖ < ωσ^{−τ}` and `α < 1`.
#[derive(Debug, Clone)]
pub struct LemmaMonitor {
    mu: f64,
    safeguard_m: f64,
    omega: f64,
    tau: f64,
    x_star: Option<Vec<f64>>,
    pub steps: usize,
    pub accelerated_steps: usize,
    pub sandwich_violations: usize,
    pub descent_violations: usize,
    pub fejer_violations: usize,
    pub gate_violations: usize,
    /// Running `Σ‖F_{t_k}(x_k)‖²`, one entry per step.
    pub residual_sq_partial_sums: Vec<f64>,
    pub worst_sandwich_gap: f64,
    pub worst_descent_gap: f64,
    pub worst_fejer_gap: f64,
}

impl LemmaMonitor {
    pub fn new(cfg: &SolverConfig, x_star: Option<Vec<f64>>) -> Self {
        Self {
            mu: cfg.mu,
            safeguard_m: cfg.safeguard_m,
            omega: cfg.omega,
            tau: cfg.tau,
            x_star,
            steps: 0,
            accelerated_steps: 0,
            sandwich_violations: 0,
            descent_violations: 0,
            fejer_violations: 0,
            gate_violations: 0,
            residual_sq_partial_sums: Vec::new(),
            worst_sandwich_gap: f64::NEG_INFINITY,
            worst_descent_gap: f64::NEG_INFINITY,
            worst_fejer_gap: f64::NEG_INFINITY,
        }
    }

    pub fn sandwich_factor(mu: f64) -> f64 {
        (mu / (2.0 - mu)).sqrt()
    }

    /// `ε` allowance for the `i`-th accelerated step (zero-based).
    pub fn fejer_allowance(&self, i: usize) -> f64 {
        self.safeguard_m
            * (self.safeguard_m + 1.0)
            * self.omega
            * self.omega
            * (1.0 + i as f64).powf(-2.0 * self.tau)
    }

    pub fn total_violations(&self) -> usize {
        self.sandwich_violations + self.descent_violations + self.fejer_violations + self.gate_violations
    }
}

impl StepObserver for LemmaMonitor {
    fn observe(&mut self, s: &StepView<'_>) {
        let c = Self::sandwich_factor(self.mu);
        let lower = (1.0 - c) * s.f_norm - s.f_tilde_norm;
        let upper = s.f_tilde_norm - (1.0 + c) * s.f_norm;
        let gap = lower.max(upper);
        self.worst_sandwich_gap = self.worst_sandwich_gap.max(gap);
        if gap > SANDWICH_SLACK {
            self.sandwich_violations += 1;
        }

        let prev = self.residual_sq_partial_sums.last().copied().unwrap_or(0.0);
        self.residual_sq_partial_sums.push(prev + s.f_norm * s.f_norm);

        let epsilon = if s.kind == StepKind::Anderson {
            let ok = s.f_tilde_norm < s.f_norm
                && s.f_tilde_norm < self.omega * (s.sigma as f64).powf(-self.tau)
                && s.alpha.is_some_and(|a| a < 1.0 && a.abs() <= self.safeguard_m);
            if !ok {
                self.gate_violations += 1;
            }
            let e = self.fejer_allowance(self.accelerated_steps);
            self.accelerated_steps += 1;
            e
        } else {
            0.0
        };

        if let Some(x_star) = &self.x_star {
            let d_x = dist_sq(s.x, x_star);
            let d_plus = dist_sq(s.y_plus, x_star);
            let descent_gap = d_plus
                - (d_x
                    - (1.0 - self.mu) * dist_sq(s.y_half, s.x)
                    - (1.0 - self.mu) * dist_sq(s.y_plus, s.y_half));
            self.worst_descent_gap = self.worst_descent_gap.max(descent_gap);
            if descent_gap > DESCENT_SLACK {
                self.descent_violations += 1;
            }
            let fejer_gap = dist_sq(s.x_next, x_star) - d_x - epsilon;
            self.worst_fejer_gap = self.worst_fejer_gap.max(fejer_gap);
            if fejer_gap > DESCENT_SLACK {
                self.fejer_violations += 1;
            }
        }
        self.steps += 1;
    }
}

/// Runs two observers on every step.
pub struct Both<'a, A: ?Sized, B: ?Sized>(pub &'a mut A, pub &'a mut B);

impl<A: StepObserver + ?Sized, B: StepObserver + ?Sized> StepObserver for Both<'_, A, B> {
    fn observe(&mut self, step: &StepView<'_>) {
        self.0.observe(step);
        self.1.observe(step);
    }
}
