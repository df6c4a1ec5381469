use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// How an iterate was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StepKind {
    /// Accelerated step `x⁺ = α·x + (1 − α)·y` (or an Anderson(1) mix).
    #[serde(rename = "AA")]
    Anderson,
    /// Plain extragradient step `x⁺ = G̃_t(x)`.
    #[serde(rename = "EG")]
    Extragradient,
    /// Plain fixed-point step `x⁺ = G_t(x)` of the Anderson(1) baseline.
    #[serde(rename = "FP")]
    FixedPoint,
}

impl StepKind {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Anderson => "AA",
            Self::Extragradient => "EG",
            Self::FixedPoint => "FP",
        }
    }
}

impl fmt::Display for StepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for StepKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "AA" => Ok(Self::Anderson),
            "EG" => Ok(Self::Extragradient),
            "FP" => Ok(Self::FixedPoint),
            other => Err(format!("unknown step kind `{other}`")),
        }
    }
}

/// One iteration of a solve.
///
/// Record `iter = k + 1` describes the step that maps `x_k` to `x_{k+1}`:
/// `residual` is `‖F₁(x_{k+1})‖`, while `t`, `backtracks`, `alpha` and
/// `sigma` are the values used to produce `x_{k+1}` from `x_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IterationRecord {
    pub iter: usize,
    pub residual: f64,
    pub t: f64,
    pub backtracks: usize,
    /// Anderson coefficient; absent when the acceleration gate was closed.
    pub alpha: Option<f64>,
    pub step_kind: StepKind,
    pub sigma: u64,
    /// `‖F_t(x_k)‖`
    pub f_norm: f64,
    /// `‖F̃_t(x_k)‖`; equal to `f_norm` for the Anderson(1) baseline.
    pub f_tilde_norm: f64,
    pub h_evals: u64,
    pub elapsed_ns: u128,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Converged,
    MaxIterations,
    Diverged,
    LineSearchStalled,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Converged => "Converged",
            Self::MaxIterations => "MaxIterations",
            Self::Diverged => "Diverged",
            Self::LineSearchStalled => "LineSearchStalled",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Status {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "Converged" => Ok(Self::Converged),
            "MaxIterations" => Ok(Self::MaxIterations),
            "Diverged" => Ok(Self::Diverged),
            "LineSearchStalled" => Ok(Self::LineSearchStalled),
            other => Err(format!("unknown status `{other}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    pub x_final: Vec<f64>,
    pub status: Status,
    pub iterations: usize,
    /// `‖F₁(x_final)‖`
    pub final_residual: f64,
    pub trace: Vec<IterationRecord>,
    pub h_evals: u64,
    pub projections: u64,
    pub elapsed_ns: u128,
}

impl SolveResult {
    pub fn converged(&self) -> bool {
        self.status == Status::Converged
    }

    pub fn seconds(&self) -> f64 {
        self.elapsed_ns as f64 * 1e-9
    }
}
