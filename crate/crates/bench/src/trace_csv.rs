//! Per-iteration trace CSV.
//!
//! ```text
//! iter,residual,t_k,backtracks,alpha,step_kind,sigma,h_evals,elapsed_ns
//! 1,0.4123,0.27,0,,EG,1,4,18234
//! ...
//! # status=Converged
//! ```
//!
//! Floats use Rust's shortest round-trip formatting, `.` as the decimal
//! separator and LF line endings. An absent `alpha` is an empty field. The
//! file always ends with a `# status=…` comment line.

use std::io::{self, BufRead, Write};

use vi_core::solver::{IterationRecord, SolveResult, Status};

pub const TRACE_HEADER: &str = "iter,residual,t_k,backtracks,alpha,step_kind,sigma,h_evals,elapsed_ns";

/// Writes `result`'s trace. With `omit_timing` the `elapsed_ns` column is
/// written as zero so that traces of identical runs compare byte for byte.
pub fn write_trace<W: Write>(mut w: W, result: &SolveResult, omit_timing: bool) -> io::Result<()> {
    writeln!(w, "{TRACE_HEADER}")?;
    for r in &result.trace {
        let alpha = r.alpha.map(|a| a.to_string()).unwrap_or_default();
        let elapsed = if omit_timing { 0 } else { r.elapsed_ns };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            r.iter, r.residual, r.t, r.backtracks, alpha, r.step_kind, r.sigma, r.h_evals, elapsed
        )?;
    }
    writeln!(w, "# status={}", result.status)?;
    Ok(())
}

/// A trace read back from CSV. Only the CSV columns are populated; the
/// `f_norm` fields of each record are `NaN`.
#[derive(Debug, Clone)]
pub struct ParsedTrace {
    pub records: Vec<IterationRecord>,
    pub status: Option<Status>,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, format!("trace line {line}: {msg}"))
}

pub fn read_trace<R: BufRead>(r: R) -> io::Result<ParsedTrace> {
    let mut lines = r.lines().enumerate();
    match lines.next() {
        Some((_, Ok(h))) if h == TRACE_HEADER => {}
        Some((_, Ok(h))) => return Err(bad(1, format!("unexpected header `{h}`"))),
        Some((_, Err(e))) => return Err(e),
        None => return Err(bad(1, "empty file")),
    }
    let mut records = Vec::new();
    let mut status = None;
    for (i, line) in lines {
        let line = line?;
        let lineno = i + 1;
        if let Some(s) = line.strip_prefix("# status=") {
            status = Some(s.parse().map_err(|e| bad(lineno, e))?);
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(bad(lineno, format!("expected 9 fields, got {}", f.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|e| bad(lineno, e));
        let int = |s: &str| s.parse::<u64>().map_err(|e| bad(lineno, e));
        records.push(IterationRecord {
            iter: int(f[0])? as usize,
            residual: num(f[1])?,
            t: num(f[2])?,
            backtracks: int(f[3])? as usize,
            alpha: if f[4].is_empty() { None } else { Some(num(f[4])?) },
            step_kind: f[5].parse().map_err(|e| bad(lineno, e))?,
            sigma: int(f[6])?,
            f_norm: f64::NAN,
            f_tilde_norm: f64::NAN,
            h_evals: int(f[7])?,
            elapsed_ns: f[8].parse().map_err(|e| bad(lineno, e))?,
        });
    }
    Ok(ParsedTrace { records, status })
}
