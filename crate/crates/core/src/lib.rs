//! Solvers for variational inequalities `VI(Ω, H)` over boxes and the
//! nonnegative orthant.
//!
//! The centerpiece is EG-Anderson(1), an extragradient method whose
//! iterates are extrapolated with a safeguarded Anderson(1) step whenever
//! the extragradient residual contracts. It needs only continuity and
//! pseudomonotonicity of `H`; a backtracking line search picks the step. The
//! extragradient method and plain Anderson(1) on the projection map are
//! provided as baselines, along with seeded generators for four benchmark
//! families.
//!
//! ```
//! use vi_core::problems::{gen_ncp, ncp::DEFAULT_KAPPA};
//! use vi_core::solver::{solve_eg_anderson1, SolverConfig};
//!
//! let problem = gen_ncp(20, DEFAULT_KAPPA, 1).unwrap();
//! let x0 = vec![0.5; 20];
//! let result = solve_eg_anderson1(&problem, &x0, &SolverConfig::with_gamma(0.27)).unwrap();
//! assert!(result.converged());
//! assert!(result.final_residual <= 1e-8);
//! ```
//!
//! The guide in `book/` walks through the method and the benchmarks; its
//! code listings are compiled as doctests of this crate.

pub mod error;
pub mod linalg;
pub mod problem;
pub mod problems;
pub mod set;
pub mod solver;

pub use error::{Result, ViError};
pub use problem::{compute_f, compute_f_tilde, natural_residual, FnOperator, Operator, ResidualPair, ViProblem};
pub use set::FeasibleSet;
pub use solver::{Method, SolveResult, SolverConfig, Status};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/residual-maps.md")]
    mod residual_maps {}
    #[doc = include_str!("../../../book/src/eg-anderson.md")]
    mod eg_anderson {}
    #[doc = include_str!("../../../book/src/baselines.md")]
    mod baselines {}
    #[doc = include_str!("../../../book/src/benchmark-problems.md")]
    mod benchmark_problems {}
    #[doc = include_str!("../../../book/src/checking-the-theory.md")]
    mod checking_the_theory {}
    #[doc = include_str!("../../../book/src/running-benchmarks.md")]
    mod running_benchmarks {}
}
