use approx::assert_relative_eq;
use nalgebra::DMatrix;
use vi_core::linalg::{dot, norm, spectral_norm, sub, DenseMatrix};
use vi_core::problems::{gen_ncp, AffineViData, AssemblyMode, FractionalData, PdeData, Rng};
use vi_core::solver::{eg_anderson1_step, SolverConfig, StepKind};

fn to_nalgebra(m: &DenseMatrix) -> DMatrix<f64> {
    DMatrix::from_row_slice(m.dim(), m.dim(), m.as_slice())
}

#[test]
fn spectral_norm_matches_svd() {
    let mut rng = Rng::new(5);
    for n in [1, 2, 7, 20, 35, 50] {
        let m = DenseMatrix::from_row_major(n, rng.normals(n * n)).unwrap();
        let svd = to_nalgebra(&m).singular_values();
        let largest = svd.iter().cloned().fold(0.0, f64::max);
        assert_relative_eq!(spectral_norm(&m), largest, max_relative = 1e-8);
    }
}

#[test]
fn affine_lipschitz_constant_is_the_largest_singular_value() {
    let data = AffineViData::generate(30, 9);
    let svd = to_nalgebra(&data.w).singular_values();
    assert_relative_eq!(data.lipschitz, svd.max(), max_relative = 1e-8);
}

#[test]
fn stencil_matrix_is_symmetric_positive_definite() {
    for big_n in [3, 5, 8, 12] {
        let d = PdeData::assemble(big_n, 0.9, 1.0, AssemblyMode::Standard).unwrap();
        let b = to_nalgebra(&d.stencil_matrix());
        assert_eq!(b, b.transpose());
        let eig = b.symmetric_eigen().eigenvalues;
        // Smallest eigenvalue of the five-point Laplacian: 8 sin²(π/2N).
        let expected = 8.0 * (std::f64::consts::PI / (2.0 * big_n as f64)).sin().powi(2);
        assert_relative_eq!(eig.min(), expected, max_relative = 1e-10);
    }
}

#[test]
fn fractional_gradient_matches_central_differences() {
    let data = FractionalData::generate(5, 21);
    let mut rng = Rng::new(22);
    for _ in 0..100 {
        let x = rng.uniforms(5, 2.0, 10.0);
        let g = data.gradient(&x).unwrap();
        for i in 0..5 {
            let h = 1e-6;
            let (mut xp, mut xm) = (x.clone(), x.clone());
            xp[i] += h;
            xm[i] -= h;
            let fd = (data.objective(&xp).unwrap() - data.objective(&xm).unwrap()) / (2.0 * h);
            assert!((fd - g[i]).abs() <= 1e-5 * norm(&g), "component {i}: {fd} vs {}", g[i]);
        }
    }
}

/// One EG-Anderson(1) step on a 5-D complementarity instance, rebuilt by
/// hand from operator evaluations and `max(0, ·)`.
#[test]
fn step_matches_hand_composition() {
    let problem = gen_ncp(5, 0.01, 3).unwrap();
    let cfg = SolverConfig::with_gamma(0.9);
    let proj = |v: Vec<f64>| -> Vec<f64> { v.into_iter().map(|a| a.max(0.0)).collect() };
    let axpy = |x: &[f64], t: f64, d: &[f64]| -> Vec<f64> { x.iter().zip(d).map(|(a, b)| a - t * b).collect() };

    for start in 0..5u64 {
        let x = Rng::new(40 + start).uniforms(5, 0.0, 1.0);
        let sigma = 1 + start;

        let hx = problem.eval(&x).unwrap();
        let mut t = cfg.gamma;
        let (y_half, y_plus) = loop {
            let yh = proj(axpy(&x, t, &hx));
            let hh = problem.eval(&yh).unwrap();
            let yp = proj(axpy(&x, t, &hh));
            let lhs = t * dot(&sub(&hh, &hx), &sub(&yh, &yp));
            let rhs = 0.5 * cfg.mu * (dot(&sub(&x, &yh), &sub(&x, &yh)) + dot(&sub(&yh, &yp), &sub(&yh, &yp)));
            if lhs <= rhs {
                break (yh, yp);
            }
            t *= cfg.rho;
        };
        let f = sub(&y_half, &x);
        let ft = sub(&y_plus, &x);
        let gate = norm(&ft) < norm(&f) && norm(&ft) < cfg.omega * (sigma as f64).powf(-cfg.tau);
        let alpha = if gate {
            let d = sub(&ft, &f);
            dot(&ft, &d) / dot(&d, &d)
        } else {
            cfg.safeguard_m + 1.0
        };
        let (expected, kind) = if alpha.abs() <= cfg.safeguard_m {
            (x.iter().zip(&y_plus).map(|(a, b)| alpha * a + (1.0 - alpha) * b).collect(), StepKind::Anderson)
        } else {
            (y_plus.clone(), StepKind::Extragradient)
        };

        let step = eg_anderson1_step(&problem, &x, sigma, &cfg).unwrap();
        assert_eq!(step.kind, kind);
        assert_eq!(step.t, t);
        assert_eq!(step.y_plus, y_plus);
        for (a, b) in step.x_next.iter().zip(&expected) {
            assert_relative_eq!(*a, *b, max_relative = 1e-14, epsilon = 1e-15);
        }
        assert_eq!(step.sigma_next, if kind == StepKind::Anderson { sigma + 1 } else { sigma });
    }
}
