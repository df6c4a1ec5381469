//! Pseudomonotone complementarity problems
//! `H(x) = (exp(−xᵀUx) + κ)·(Px + ι)` over `x ≥ 0`, with a planted solution.
//!
//! `P = P₀ᵀP₀` and `U = U₀ᵀU₀` with standard normal `P₀, U₀`;
//! `x̂ = max(0, z)` for a standard normal `z`, and
//! `ι_i = −(Px̂)_i` where `x̂_i > 0`, `ι_i = −(Px̂)_i + r_i` where `x̂_i = 0`,
//! with `r_i` uniform on `[0, 1)`. Then `Px̂ + ι` vanishes on the support of
//! `x̂` and is positive off it, so `x̂` solves the problem.

use crate::error::Result;
use crate::linalg::{dot, DenseMatrix};
use crate::problem::{Operator, ViProblem};
use crate::set::FeasibleSet;

use super::rng::Rng;

pub const DEFAULT_KAPPA: f64 = 0.01;

#[derive(Debug, Clone)]
pub struct NcpData {
    pub p: DenseMatrix,
    pub u: DenseMatrix,
    pub iota: Vec<f64>,
    pub kappa: f64,
    pub x_hat: Vec<f64>,
}

impl NcpData {
    /// Draws `P₀`, `U₀` (row-major normals), `z` (normals), then `r`
    /// (`n` uniforms, drawn for every index but used only where `x̂_i = 0`).
    pub fn generate(n: usize, kappa: f64, seed: u64) -> Self {
        let mut rng = Rng::new(seed);
        let p0 = DenseMatrix::from_row_major(n, rng.normals(n * n)).expect("n² entries");
        let u0 = DenseMatrix::from_row_major(n, rng.normals(n * n)).expect("n² entries");
        let x_hat: Vec<f64> = rng.normals(n).into_iter().map(|z| z.max(0.0)).collect();
        let r = rng.uniforms(n, 0.0, 1.0);
        let p = p0.gram();
        let u = u0.gram();
        let px = p.mul_vec(&x_hat);
        let iota = px
            .iter()
            .zip(&x_hat)
            .zip(&r)
            .map(|((pxi, xi), ri)| if *xi > 0.0 { -pxi } else { -pxi + ri })
            .collect();
        Self {
            p,
            u,
            iota,
            kappa,
            x_hat,
        }
    }
}

impl Operator for NcpData {
    fn dim(&self) -> usize {
        self.iota.len()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        self.u.mul_vec_into(x, out);
        let scale = (-dot(x, out)).exp() + self.kappa;
        self.p.mul_vec_into(x, out);
        for (o, c) in out.iter_mut().zip(&self.iota) {
            *o = scale * (*o + c);
        }
    }
}

pub fn ncp_problem(data: NcpData) -> Result<ViProblem> {
    let n = data.iota.len();
    let x_hat = data.x_hat.clone();
    ViProblem::new(data, FeasibleSet::orthant(n))?.with_known_solution(x_hat)
}

pub fn gen_ncp(n: usize, kappa: f64, seed: u64) -> Result<ViProblem> {
    ncp_problem(NcpData::generate(n, kappa, seed))
}
