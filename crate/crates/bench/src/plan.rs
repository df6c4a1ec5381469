//! Benchmark plans: one instance, several solvers, several start points.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use vi_core::problems::ProblemSpec;
use vi_core::solver::{Method, Status};

use crate::run::{read_file, run_once, BenchError, StepRule};

fn default_solvers() -> Vec<Method> {
    Method::ALL.to_vec()
}

fn default_seeds() -> Vec<u64> {
    (1000..1010).collect()
}

fn default_tol() -> f64 {
    1e-8
}

fn default_max_iter() -> usize {
    10_000
}

/// One row group of a results table.
///
/// The instance is fixed by `spec` (including its seed); `seeds` only vary
/// the starting point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchPlan {
    pub spec: ProblemSpec,
    #[serde(default = "default_solvers")]
    pub solvers: Vec<Method>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lipschitz_fraction: Option<f64>,
    #[serde(default = "default_seeds")]
    pub seeds: Vec<u64>,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

impl BenchPlan {
    pub fn new(spec: ProblemSpec, gamma: Option<f64>) -> Self {
        Self {
            spec,
            solvers: default_solvers(),
            gamma,
            lipschitz_fraction: None,
            seeds: default_seeds(),
            tol: default_tol(),
            max_iter: default_max_iter(),
        }
    }
}

/// A whole table: a title and its row groups.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchTable {
    #[serde(default)]
    pub title: String,
    pub plans: Vec<BenchPlan>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PlanFile {
    Table(BenchTable),
    Single(BenchPlan),
}

impl BenchTable {
    /// Accepts either a table or a single plan.
    pub fn from_json(text: &str) -> Result<Self, BenchError> {
        let parsed: PlanFile = serde_json::from_str(text)?;
        let table = match parsed {
            PlanFile::Table(t) => t,
            PlanFile::Single(p) => BenchTable {
                title: String::new(),
                plans: vec![p],
            },
        };
        for p in &table.plans {
            p.spec.normalized()?;
        }
        Ok(table)
    }

    pub fn load(path: &str) -> Result<Self, BenchError> {
        Self::from_json(&read_file(path)?)
    }
}

/// Outcome of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunOutcome {
    pub solver: Method,
    pub seed: u64,
    pub status: Status,
    pub iterations: usize,
    pub seconds: f64,
    pub h_evals: u64,
}

/// Aggregate over the start points of one solver.
///
/// `avg_iters` and `avg_seconds` average over converged runs only and are
/// `None` when no run converged.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub solver: Method,
    pub avg_iters: Option<f64>,
    pub avg_seconds: Option<f64>,
    pub converged_count: usize,
    pub total_runs: usize,
}

impl BenchRow {
    pub fn from_runs(solver: Method, runs: &[RunOutcome]) -> Self {
        let mine: Vec<&RunOutcome> = runs.iter().filter(|r| r.solver == solver).collect();
        let ok: Vec<&&RunOutcome> = mine.iter().filter(|r| r.status == Status::Converged).collect();
        let mean = |f: &dyn Fn(&RunOutcome) -> f64| {
            (!ok.is_empty()).then(|| ok.iter().map(|r| f(r)).sum::<f64>() / ok.len() as f64)
        };
        Self {
            solver,
            avg_iters: mean(&|r| r.iterations as f64),
            avg_seconds: mean(&|r| r.seconds),
            converged_count: ok.len(),
            total_runs: mine.len(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlanResult {
    pub plan: BenchPlan,
    pub runs: Vec<RunOutcome>,
    pub rows: Vec<BenchRow>,
}

/// Runs every (solver, seed) pair in parallel. Each worker generates its own
/// copy of the instance so evaluation counts stay per-run. Any solver error
/// aborts the plan; nonconvergence does not.
pub fn run_plan(plan: &BenchPlan) -> Result<PlanResult, BenchError> {
    let jobs: Vec<(Method, u64)> = plan
        .solvers
        .iter()
        .flat_map(|&m| plan.seeds.iter().map(move |&s| (m, s)))
        .collect();
    let runs = jobs
        .par_iter()
        .map_init(
            || plan.spec.build(),
            |built, &(solver, seed)| {
                let problem = built.as_ref().map_err(|e| BenchError::Usage(e.to_string()))?;
                let rule = StepRule::resolve(plan.gamma, plan.lipschitz_fraction, problem)?;
                let cfg = rule.config(problem, plan.tol, plan.max_iter)?;
                let res = run_once(&plan.spec, problem, solver, seed, &cfg)?;
                Ok(RunOutcome {
                    solver,
                    seed,
                    status: res.status,
                    iterations: res.iterations,
                    seconds: res.seconds(),
                    h_evals: res.h_evals,
                })
            },
        )
        .collect::<Result<Vec<_>, BenchError>>()?;
    let rows = plan.solvers.iter().map(|&m| BenchRow::from_runs(m, &runs)).collect();
    Ok(PlanResult {
        plan: plan.clone(),
        runs,
        rows,
    })
}

pub fn run_table(table: &BenchTable) -> Result<Vec<PlanResult>, BenchError> {
    table.plans.iter().map(run_plan).collect()
}
