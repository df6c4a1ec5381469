//! Markdown and CSV summaries of benchmark results.

use std::fmt::Write as _;

use vi_core::solver::Method;

use crate::plan::{BenchRow, PlanResult};
use crate::run::BenchError;

pub const SUMMARY_HEADER: &str = "family,n,step,solver,avg_iters,avg_seconds,converged_count,total_runs";

/// Step column: `gamma=0.27`, `lipschitz_fraction=0.7`, or `default` when the
/// plan left the choice to the instance.
pub fn step_label(result: &PlanResult) -> String {
    match (result.plan.gamma, result.plan.lipschitz_fraction) {
        (Some(g), _) => format!("gamma={g}"),
        (None, Some(f)) => format!("lipschitz_fraction={f}"),
        (None, None) => "default".to_string(),
    }
}

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn summary_csv(results: &[PlanResult]) -> String {
    let mut out = String::new();
    out.push_str(SUMMARY_HEADER);
    out.push('\n');
    for r in results {
        let step = step_label(r);
        for row in &r.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{}",
                r.plan.spec.family.name(),
                r.plan.spec.n,
                step,
                row.solver,
                opt(row.avg_iters),
                opt(row.avg_seconds),
                row.converged_count,
                row.total_runs
            )
            .unwrap();
        }
    }
    out
}

/// A summary line read back from CSV.
#[derive(Debug, Clone, PartialEq)]
pub struct SummaryLine {
    pub family: String,
    pub n: usize,
    pub step: String,
    pub row: BenchRow,
}

pub fn parse_summary_csv(text: &str) -> Result<Vec<SummaryLine>, BenchError> {
    let bad = |i: usize, msg: String| BenchError::Usage(format!("summary line {}: {msg}", i + 1));
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, h)) if h == SUMMARY_HEADER => {}
        _ => return Err(bad(0, "unexpected header".into())),
    }
    let mut out = Vec::new();
    for (i, line) in lines {
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 8 {
            return Err(bad(i, format!("expected 8 fields, got {}", f.len())));
        }
        let num = |s: &str| -> Result<Option<f64>, BenchError> {
            if s.is_empty() {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|e| bad(i, format!("{e}")))
            }
        };
        let int = |s: &str| s.parse::<usize>().map_err(|e| bad(i, format!("{e}")));
        out.push(SummaryLine {
            family: f[0].to_string(),
            n: int(f[1])?,
            step: f[2].to_string(),
            row: BenchRow {
                solver: f[3].parse::<Method>().map_err(|e| bad(i, e))?,
                avg_iters: num(f[4])?,
                avg_seconds: num(f[5])?,
                converged_count: int(f[6])?,
                total_runs: int(f[7])?,
            },
        });
    }
    Ok(out)
}

type Cell = dyn Fn(&BenchRow) -> String;

/// Tables in the layout of the experiments: one column per solver and, per
/// plan, rows for average seconds, average iterations and convergence
/// counts. A dash marks a solver with no converged run.
pub fn summary_markdown(title: &str, results: &[PlanResult]) -> String {
    let mut solvers: Vec<Method> = Vec::new();
    for r in results {
        for row in &r.rows {
            if !solvers.contains(&row.solver) {
                solvers.push(row.solver);
            }
        }
    }
    let mut out = String::new();
    if !title.is_empty() {
        writeln!(out, "## {title}\n").unwrap();
    }
    out.push_str("| family | n | step | |");
    for s in &solvers {
        write!(out, " {s} |").unwrap();
    }
    out.push_str("\n|---|---|---|---|");
    out.push_str(&"---|".repeat(solvers.len()));
    out.push('\n');
    for r in results {
        let cell = |m: Method, f: &Cell| {
            r.rows.iter().find(|row| row.solver == m).map(f).unwrap_or_default()
        };
        let lines: [(&str, &Cell); 3] = [
            ("Sec.(avr)", &|row| row.avg_seconds.map_or("–".into(), |v| format!("{v:.4}"))),
            ("Iter.(avr)", &|row| row.avg_iters.map_or("–".into(), |v| format!("{v:.1}"))),
            ("converged", &|row| format!("{}/{}", row.converged_count, row.total_runs)),
        ];
        for (k, (label, f)) in lines.iter().enumerate() {
            if k == 0 {
                write!(out, "| {} | {} | {} |", r.plan.spec.family.name(), r.plan.spec.n, step_label(r)).unwrap();
            } else {
                out.push_str("| | | |");
            }
            write!(out, " {label} |").unwrap();
            for &m in &solvers {
                write!(out, " {} |", cell(m, f)).unwrap();
            }
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plan::BenchPlan;
    use vi_core::problems::{Family, ProblemSpec};

    fn result() -> PlanResult {
        PlanResult {
            plan: BenchPlan::new(ProblemSpec::new(Family::Ncp, 100, 1), Some(0.27)),
            runs: vec![],
            rows: vec![
                BenchRow {
                    solver: Method::EgAnderson1,
                    avg_iters: Some(130.2),
                    avg_seconds: Some(0.012345678901234),
                    converged_count: 10,
                    total_runs: 10,
                },
                BenchRow {
                    solver: Method::Anderson1,
                    avg_iters: None,
                    avg_seconds: None,
                    converged_count: 0,
                    total_runs: 10,
                },
            ],
        }
    }

    #[test]
    fn csv_round_trips() {
        let r = result();
        let text = summary_csv(std::slice::from_ref(&r));
        assert!(text.starts_with(SUMMARY_HEADER));
        assert!(text.contains("NCP,100,gamma=0.27,anderson1,,,0,10\n"));
        let back = parse_summary_csv(&text).unwrap();
        assert_eq!(back.len(), 2);
        assert_eq!(back[0].row, r.rows[0]);
        assert_eq!(back[1].row, r.rows[1]);
    }

    #[test]
    fn markdown_has_a_column_per_solver() {
        let md = summary_markdown("NCP", &[result()]);
        assert!(md.contains("| eg_anderson1 | anderson1 |"));
        assert!(md.contains("| Iter.(avr) | 130.2 | – |"));
        assert!(md.contains("| converged | 10/10 | 0/10 |"));
    }
}
