use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use vi_bench::report::{summary_csv, summary_markdown};
use vi_bench::trace_csv::write_trace;
use vi_bench::{load_spec, run_table, BenchError, BenchTable, StepRule};
use vi_core::problems::SpecError;
use vi_core::solver::{Method, SolveResult, SolverConfig};
use vi_core::ViError;

#[derive(Parser)]
#[command(name = "vi", version, about = "Solve and benchmark variational inequalities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a problem spec, print it normalized, and report instance facts.
    Generate {
        /// Spec JSON, inline or as a file path.
        #[arg(long)]
        spec: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one instance and print a one-line JSON summary.
    Solve {
        #[command(flatten)]
        run: RunArgs,
        /// Write the full result (including the final iterate) as JSON.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Solve one instance and write the per-iteration trace as CSV.
    Trace {
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        out: PathBuf,
        /// Write zeros in the elapsed_ns column.
        #[arg(long)]
        omit_timing: bool,
    },
    /// Run a benchmark plan and write summary.csv and summary.md.
    Bench {
        #[arg(long)]
        plan: String,
        /// Output directory; the Markdown table is printed either way.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Start {
    /// Uniform random point drawn from --seed.
    Random,
    /// The instance's known solution.
    Solution,
}

#[derive(Args)]
struct RunArgs {
    #[arg(long)]
    spec: String,
    #[arg(long, default_value = "eg_anderson1")]
    solver: Method,
    /// Initial line-search step.
    #[arg(long)]
    gamma: Option<f64>,
    /// Fixed step fraction/L; the default when the instance knows L and no
    /// gamma is given.
    #[arg(long)]
    lipschitz_fraction: Option<f64>,
    /// Seed of the starting point.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, value_enum, default_value = "random")]
    start: Start,
    #[arg(long, default_value_t = 1e-8)]
    tol: f64,
    #[arg(long, default_value_t = 10_000)]
    max_iter: usize,
    /// Override the acceleration scale omega (0 turns acceleration off).
    #[arg(long)]
    omega: Option<f64>,
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<BenchError> for Failure {
    fn from(e: BenchError) -> Self {
        match e {
            BenchError::Spec(SpecError::Build(ViError::Domain(_))) | BenchError::Solver(ViError::Domain(_)) => {
                Failure::Runtime(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn io_err(path: &std::path::Path, e: io::Error) -> Failure {
    Failure::Runtime(format!("{}: {e}", path.display()))
}

fn write_out(path: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| io_err(p, e)),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn solve(args: &RunArgs) -> Result<SolveResult, Failure> {
    let spec = load_spec(&args.spec)?;
    let problem = spec.build().map_err(BenchError::from)?;
    let rule = StepRule::resolve(args.gamma, args.lipschitz_fraction, &problem)?;
    let mut cfg = rule.config(&problem, args.tol, args.max_iter)?;
    if let Some(omega) = args.omega {
        cfg = SolverConfig { omega, ..cfg };
        cfg.validate().map_err(BenchError::from)?;
    }
    let x0 = match args.start {
        Start::Random => spec.initial_point(args.seed),
        Start::Solution => problem
            .known_solution()
            .ok_or_else(|| Failure::Usage(format!("family {} has no known solution", spec.family.name())))?
            .to_vec(),
    };
    args.solver
        .solve(&problem, &x0, &cfg)
        .map_err(|e| match e {
            ViError::Domain(_) => Failure::Runtime(e.to_string()),
            other => Failure::Usage(other.to_string()),
        })
}

fn summary(res: &SolveResult) -> serde_json::Value {
    json!({
        "status": res.status.as_str(),
        "iterations": res.iterations,
        "final_residual": res.final_residual,
        "h_evals": res.h_evals,
        "seconds": res.seconds(),
    })
}

fn exit_for(res: &SolveResult) -> ExitCode {
    if res.converged() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cmd: Command) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Generate { spec, out } => {
            let spec = load_spec(&spec)?;
            let problem = spec.build().map_err(BenchError::from)?;
            let mut info = json!({ "spec": spec, "dim": problem.dim() });
            if let Some(l) = problem.lipschitz() {
                info["lipschitz"] = json!(l);
            }
            info["known_solution"] = json!(problem.known_solution().is_some());
            write_out(&out, &format!("{}\n", serde_json::to_string_pretty(&info).expect("json")))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Solve { run, out } => {
            let res = solve(&run)?;
            println!("{}", summary(&res));
            if let Some(p) = out {
                let mut full = summary(&res);
                full["x_final"] = json!(res.x_final);
                fs::write(&p, format!("{full}\n")).map_err(|e| io_err(&p, e))?;
            }
            Ok(exit_for(&res))
        }
        Command::Trace { run, out, omit_timing } => {
            let res = solve(&run)?;
            let file = fs::File::create(&out).map_err(|e| io_err(&out, e))?;
            let mut w = io::BufWriter::new(file);
            write_trace(&mut w, &res, omit_timing)
                .and_then(|_| w.flush())
                .map_err(|e| io_err(&out, e))?;
            println!("{}", summary(&res));
            Ok(exit_for(&res))
        }
        Command::Bench { plan, out } => {
            let table = BenchTable::load(&plan)?;
            let results = run_table(&table).map_err(Failure::from)?;
            let md = summary_markdown(&table.title, &results);
            print!("{md}");
            if let Some(dir) = out {
                fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
                let csv_path = dir.join("summary.csv");
                fs::write(&csv_path, summary_csv(&results)).map_err(|e| io_err(&csv_path, e))?;
                let md_path = dir.join("summary.md");
                fs::write(&md_path, md).map_err(|e| io_err(&md_path, e))?;
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
