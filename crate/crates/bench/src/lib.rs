//! Benchmark harness for the `vi-core` solvers.
//!
//! A [`BenchPlan`] fixes one instance through its [`ProblemSpec`], a step
//! rule and a list of start-point seeds; [`run_plan`] runs every solver from
//! every start point in parallel and averages the converged runs.
//! [`report`] renders the results as Markdown or CSV, and [`trace_csv`]
//! writes per-iteration traces. The `vi` binary wraps all of this.
//!
//! [`ProblemSpec`]: vi_core::problems::ProblemSpec

pub mod plan;
pub mod report;
pub mod run;
pub mod trace_csv;

pub use plan::{run_plan, run_table, BenchPlan, BenchRow, BenchTable, PlanResult, RunOutcome};
pub use run::{load_spec, run_once, BenchError, StepRule, DEFAULT_LIPSCHITZ_FRACTION};
