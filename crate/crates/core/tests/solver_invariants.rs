use vi_core::problems::{gen_harker_pang, gen_ncp, Family, ProblemSpec};
use vi_core::solver::{
    acceptance_sides, solve_anderson1, solve_eg, solve_eg_anderson1, solve_eg_anderson1_observed, LemmaMonitor,
    SolverConfig, StepKind, StepObserver, StepView,
};
use vi_core::{natural_residual, FeasibleSet, FnOperator, Status, ViProblem};

/// Records every accepted `(x, t)` pair with the step kind.
#[derive(Default)]
struct Steps(Vec<(Vec<f64>, f64, StepKind)>);

impl StepObserver for Steps {
    fn observe(&mut self, s: &StepView<'_>) {
        self.0.push((s.x.to_vec(), s.t, s.kind));
    }
}

fn accepts(problem: &ViProblem, x: &[f64], t: f64, mu: f64) -> bool {
    let hx = problem.eval(x).unwrap();
    let step = |d: &[f64]| -> Vec<f64> {
        let m: Vec<f64> = x.iter().zip(d).map(|(a, b)| a - t * b).collect();
        problem.set().project(&m).unwrap()
    };
    let yh = step(&hx);
    let hh = problem.eval(&yh).unwrap();
    let yp = step(&hh);
    let (lhs, rhs) = acceptance_sides(t, mu, x, &hx, &yh, &hh, &yp);
    lhs <= rhs
}

#[test]
fn recorded_steps_pass_the_line_search_test_post_hoc() {
    let problem = gen_ncp(20, 0.01, 8).unwrap();
    let cfg = SolverConfig::with_gamma(2.0);
    let mut steps = Steps::default();
    let x0 = ProblemSpec::new(Family::Ncp, 20, 8).initial_point(9);
    let res = solve_eg_anderson1_observed(&problem, &x0, &cfg, &mut steps).unwrap();
    assert!(res.converged());
    let mut backtracked = 0;
    for ((x, t, _), rec) in steps.0.iter().zip(&res.trace) {
        assert_eq!(*t, rec.t);
        assert!(accepts(&problem, x, *t, cfg.mu));
        if rec.backtracks > 0 {
            backtracked += 1;
            assert!(!accepts(&problem, x, t / cfg.rho, cfg.mu));
        }
    }
    assert!(backtracked > 0);
}

#[test]
fn zero_omega_reproduces_extragradient_exactly() {
    for seed in 0..3 {
        let problem = gen_ncp(15, 0.01, seed).unwrap();
        let x0 = ProblemSpec::new(Family::Ncp, 15, seed).initial_point(seed + 50);
        let cfg = SolverConfig::with_gamma(0.5);
        let a = solve_eg_anderson1(&problem, &x0, &SolverConfig { omega: 0.0, ..cfg.clone() }).unwrap();
        let b = solve_eg(&problem, &x0, &cfg).unwrap();
        assert_eq!(a.x_final, b.x_final);
        assert_eq!(a.trace.len(), b.trace.len());
        for (ra, rb) in a.trace.iter().zip(&b.trace) {
            assert_eq!(ra.step_kind, StepKind::Extragradient);
            assert_eq!((ra.residual, ra.t, ra.backtracks, ra.sigma), (rb.residual, rb.t, rb.backtracks, rb.sigma));
        }
    }
}

#[test]
fn squared_residuals_flatten_out() {
    let problem = gen_ncp(30, 0.01, 4).unwrap();
    let cfg = SolverConfig::with_gamma(0.27);
    let x0 = ProblemSpec::new(Family::Ncp, 30, 4).initial_point(4);
    let mut mon = LemmaMonitor::new(&cfg, problem.known_solution().map(<[f64]>::to_vec));
    let res = solve_eg_anderson1_observed(&problem, &x0, &cfg, &mut mon).unwrap();
    assert!(res.converged());
    let s = &mon.residual_sq_partial_sums;
    let q = s.len() / 4;
    assert!(q > 0);
    let first = s[q - 1];
    let last = s[s.len() - 1] - s[s.len() - 1 - q];
    assert!(last < first, "first quarter {first}, last quarter {last}");
    assert_eq!(mon.total_violations(), 0);
}

#[test]
fn runs_are_deterministic() {
    let problem = gen_harker_pang(40, 2).unwrap();
    let cfg = SolverConfig::with_constant_step(0.7 / problem.lipschitz().unwrap());
    let x0 = ProblemSpec::new(Family::HarkerPang, 40, 2).initial_point(3);
    for solve in [solve_eg_anderson1, solve_anderson1, solve_eg] {
        let a = solve(&problem, &x0, &cfg).unwrap();
        let b = solve(&problem, &x0, &cfg).unwrap();
        assert_eq!(a.x_final, b.x_final);
        assert_eq!(a.iterations, b.iterations);
        assert_eq!(a.h_evals, b.h_evals);
    }
}

#[test]
fn starting_at_the_solution_takes_no_steps() {
    let problem = gen_ncp(12, 0.01, 1).unwrap();
    let x_hat = problem.known_solution().unwrap().to_vec();
    assert!(natural_residual(&problem, &x_hat).unwrap() <= 1e-10);
    for solve in [solve_eg_anderson1, solve_anderson1, solve_eg] {
        let res = solve(&problem, &x_hat, &SolverConfig::with_gamma(0.27)).unwrap();
        assert_eq!((res.status, res.iterations), (Status::Converged, 0));
        assert!(res.trace.is_empty());
    }
}

#[test]
fn infeasible_start_is_projected() {
    let problem = ViProblem::new(
        FnOperator::new(2, |x: &[f64], out: &mut [f64]| {
            out[0] = x[0] - 1.0;
            out[1] = x[1] + 1.0;
        }),
        FeasibleSet::orthant(2),
    )
    .unwrap();
    let res = solve_eg_anderson1(&problem, &[-3.0, -3.0], &SolverConfig::with_gamma(1.0)).unwrap();
    assert!(res.converged());
    assert!((res.x_final[0] - 1.0).abs() < 1e-8);
    assert_eq!(res.x_final[1], 0.0);
}

#[test]
fn every_family_converges_with_every_solver_at_small_size() {
    let cases = [
        (ProblemSpec::new(Family::HarkerPang, 20, 1), None),
        (ProblemSpec::new(Family::Fractional, 20, 1), Some(0.6)),
        (ProblemSpec::new(Family::Ncp, 20, 1), Some(0.27)),
        (
            ProblemSpec::from_json(r#"{"family":"PDEFreeBoundary","n":64,"seed":0,"params":{"p":0.9}}"#).unwrap(),
            Some(0.01),
        ),
    ];
    for (spec, gamma) in cases {
        let problem = spec.build().unwrap();
        let cfg = match gamma {
            Some(g) => SolverConfig::with_gamma(g),
            None => SolverConfig::with_constant_step(0.7 / problem.lipschitz().unwrap()),
        };
        let x0 = spec.initial_point(7);
        for solve in [solve_eg_anderson1, solve_anderson1, solve_eg] {
            let res = solve(&problem, &x0, &cfg).unwrap();
            assert!(res.converged(), "{:?}: {:?}", spec.family, res.status);
            assert!(natural_residual(&problem, &res.x_final).unwrap() <= 1e-8);
        }
    }
}
