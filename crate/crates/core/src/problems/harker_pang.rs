//! Monotone affine problems `H(x) = Wx + w₀` over the box `[0, 20]ⁿ`, with
//! `W = AᵀA + S + D`: `A` standard normal, `S` skew-symmetric with entries
//! uniform on `(−5, 5)`, and `D` diagonal uniform on `(0, 2)`.

use crate::error::Result;
use crate::linalg::{spectral_norm, DenseMatrix};
use crate::problem::{Operator, ViProblem};
use crate::set::FeasibleSet;

use super::rng::Rng;

pub const BOX_UPPER: f64 = 20.0;

#[derive(Debug, Clone)]
pub struct AffineViData {
    pub a: DenseMatrix,
    pub s: DenseMatrix,
    pub d: Vec<f64>,
    pub w: DenseMatrix,
    pub w0: Vec<f64>,
    /// `‖W‖₂`, the Lipschitz constant of `H`.
    pub lipschitz: f64,
}

impl AffineViData {
    /// Draws, in order: `A` (row-major normals), the strict upper triangle
    /// of `S` (row-major uniforms on `[−5, 5)`, mirrored with a sign flip),
    /// the diagonal of `D` (uniforms on `[0, 2)`), then `w₀` (normals).
    pub fn generate(n: usize, seed: u64) -> Self {
        let mut rng = Rng::new(seed);
        let a = DenseMatrix::from_row_major(n, rng.normals(n * n)).expect("n² entries");
        let mut s = DenseMatrix::zeros(n);
        for i in 0..n {
            for j in i + 1..n {
                let v = rng.uniform(-5.0, 5.0);
                s[(i, j)] = v;
                s[(j, i)] = -v;
            }
        }
        let d = rng.uniforms(n, 0.0, 2.0);
        let w0 = rng.normals(n);

        let mut w = a.gram();
        w.add_assign(&s);
        for (i, di) in d.iter().enumerate() {
            w[(i, i)] += di;
        }
        let lipschitz = spectral_norm(&w);
        Self {
            a,
            s,
            d,
            w,
            w0,
            lipschitz,
        }
    }
}

struct AffineOperator {
    w: DenseMatrix,
    w0: Vec<f64>,
}

impl Operator for AffineOperator {
    fn dim(&self) -> usize {
        self.w.dim()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        self.w.mul_vec_into(x, out);
        for (o, c) in out.iter_mut().zip(&self.w0) {
            *o += c;
        }
    }
}

pub fn harker_pang_problem(data: &AffineViData) -> Result<ViProblem> {
    let n = data.w.dim();
    let op = AffineOperator {
        w: data.w.clone(),
        w0: data.w0.clone(),
    };
    ViProblem::new(op, FeasibleSet::uniform_box(n, 0.0, BOX_UPPER)?)?.with_lipschitz(data.lipschitz)
}

pub fn gen_harker_pang(n: usize, seed: u64) -> Result<ViProblem> {
    harker_pang_problem(&AffineViData::generate(n, seed))
}
