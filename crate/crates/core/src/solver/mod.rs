//! Iterative methods for `VI(Ω, H)`.
//!
//! * [`solve_eg_anderson1`]: extragradient steps with a safeguarded
//!   Anderson(1) extrapolation.
//! * [`solve_eg`]: the extragradient method (same code path, `ω = 0`).
//! * [`solve_anderson1`]: Anderson(1) on the projection map, unsafeguarded.
//!
//! All three stop when `‖F₁(x_k)‖ ≤ tol`, after `max_iter` steps, when the
//! residual exceeds [`DIVERGENCE_THRESHOLD`] or becomes non-finite, or when
//! the line search runs out of backtracks.

mod anderson;
mod config;
mod extragradient;
mod line_search;
pub mod monitor;
mod trace;

pub use anderson::{anderson1_weight, solve_anderson1, AndersonMemory};
pub use config::SolverConfig;
pub use extragradient::{
    anderson_coefficient, eg_anderson1_step, solve_eg, solve_eg_anderson1, solve_eg_anderson1_observed,
    solve_eg_observed, StepReport, COEFFICIENT_DENOMINATOR_FLOOR,
};
pub use line_search::{acceptance_sides, line_search, LineSearchOutcome};
pub use monitor::{LemmaMonitor, StepObserver, StepView};
pub use trace::{IterationRecord, SolveResult, Status, StepKind};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::problem::ViProblem;

/// Residual above which a run is declared divergent.
pub const DIVERGENCE_THRESHOLD: f64 = 1e12;

/// The three methods, by name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    EgAnderson1,
    Anderson1,
    Eg,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::EgAnderson1, Method::Anderson1, Method::Eg];

    pub fn name(self) -> &'static str {
        match self {
            Self::EgAnderson1 => "eg_anderson1",
            Self::Anderson1 => "anderson1",
            Self::Eg => "eg",
        }
    }

    pub fn solve(self, problem: &ViProblem, x0: &[f64], cfg: &SolverConfig) -> Result<SolveResult> {
        match self {
            Self::EgAnderson1 => solve_eg_anderson1(problem, x0, cfg),
            Self::Anderson1 => solve_anderson1(problem, x0, cfg),
            Self::Eg => solve_eg(problem, x0, cfg),
        }
    }
}

impl std::fmt::Display for Method {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown solver `{s}` (expected eg_anderson1, anderson1 or eg)"))
    }
}
