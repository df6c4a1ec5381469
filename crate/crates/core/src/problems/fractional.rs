//! Quadratic fractional programs: minimize
//! `φ(x) = (xᵀQx + aᵀx + a₀)/(bᵀx + b₀)` over `[2, 10]ⁿ`, posed as the
//! variational inequality of `H = ∇φ`.
//!
//! `Q = Q₀ᵀQ₀ + I`, `a = l + c`, `b = l + d`, `a₀ = 1 + c₀`, `b₀ = 1 + d₀`,
//! with the entries of `Q₀` uniform on `[−1, 1)` and those of `c, d, c₀, d₀`
//! uniform on `[0, 1)`. Since `b ≥ l`, `b₀ ≥ 1` and `x ≥ 2l` on the box, the
//! denominator is at least `2n + 1`.
//!
//! With a nonnegative `Q₀` the gradient is positive on the whole box and the
//! solution is the corner `2l`, reached in a single projection; the signed
//! `Q₀` gives an interior solution.

use crate::error::{check_dim, Result, ViError};
use crate::linalg::{dot, DenseMatrix};
use crate::problem::{Operator, ViProblem};
use crate::set::FeasibleSet;

use super::rng::Rng;

pub const BOX_LOWER: f64 = 2.0;
pub const BOX_UPPER: f64 = 10.0;

#[derive(Debug, Clone)]
pub struct FractionalData {
    pub q: DenseMatrix,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub a0: f64,
    pub b0: f64,
}

impl FractionalData {
    /// Draws `Q₀` (row-major), then `c`, `d`, `c₀`, `d₀`.
    pub fn generate(n: usize, seed: u64) -> Self {
        let mut rng = Rng::new(seed);
        let q0 = DenseMatrix::from_row_major(n, rng.uniforms(n * n, -1.0, 1.0)).expect("n² entries");
        let c = rng.uniforms(n, 0.0, 1.0);
        let d = rng.uniforms(n, 0.0, 1.0);
        let c0 = rng.unit();
        let d0 = rng.unit();
        let mut q = q0.gram();
        for i in 0..n {
            q[(i, i)] += 1.0;
        }
        Self {
            q,
            a: c.iter().map(|v| 1.0 + v).collect(),
            b: d.iter().map(|v| 1.0 + v).collect(),
            a0: 1.0 + c0,
            b0: 1.0 + d0,
        }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    pub fn denominator(&self, x: &[f64]) -> f64 {
        dot(&self.b, x) + self.b0
    }

    /// `φ(x)`
    pub fn objective(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim(), x.len())?;
        let den = self.checked_denominator(x)?;
        let qx = self.q.mul_vec(x);
        Ok((dot(x, &qx) + dot(&self.a, x) + self.a0) / den)
    }

    fn checked_denominator(&self, x: &[f64]) -> Result<f64> {
        let den = self.denominator(x);
        if den > 0.0 {
            Ok(den)
        } else {
            Err(ViError::Domain(format!("bᵀx + b₀ = {den} is not positive")))
        }
    }

    /// `∇φ(x)`, written into `out`.
    pub fn gradient_into(&self, x: &[f64], out: &mut [f64]) -> Result<()> {
        let den = self.checked_denominator(x)?;
        self.q.mul_vec_into(x, out);
        let num = dot(x, out) + dot(&self.a, x) + self.a0;
        let inv = 1.0 / den;
        let scale = num * inv * inv;
        for ((o, ai), bi) in out.iter_mut().zip(&self.a).zip(&self.b) {
            *o = (2.0 * *o + ai) * inv - bi * scale;
        }
        Ok(())
    }

    pub fn gradient(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        let mut out = vec![0.0; x.len()];
        self.gradient_into(x, &mut out)?;
        Ok(out)
    }
}

impl Operator for FractionalData {
    fn dim(&self) -> usize {
        self.a.len()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        if self.gradient_into(x, out).is_err() {
            out.fill(f64::NAN);
        }
    }
}

pub fn fractional_problem(data: FractionalData) -> Result<ViProblem> {
    let n = data.dim();
    ViProblem::new(data, FeasibleSet::uniform_box(n, BOX_LOWER, BOX_UPPER)?)
}

pub fn gen_fractional(n: usize, seed: u64) -> Result<ViProblem> {
    fractional_problem(FractionalData::generate(n, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn denominator_is_bounded_below_on_the_box() {
        let data = FractionalData::generate(7, 4);
        let mut rng = Rng::new(8);
        for _ in 0..100 {
            let x = rng.uniforms(7, BOX_LOWER, BOX_UPPER);
            assert!(data.denominator(&x) >= 2.0 * 7.0 + 1.0);
        }
    }

    #[test]
    fn quadratic_part_dominates_identity() {
        let data = FractionalData::generate(5, 2);
        let mut rng = Rng::new(3);
        for _ in 0..100 {
            let x = rng.normals(5);
            let qx = data.q.mul_vec(&x);
            assert!(dot(&x, &qx) >= dot(&x, &x) * (1.0 - 1e-12));
        }
    }

    #[test]
    fn nonpositive_denominator_is_a_domain_error() {
        let data = FractionalData::generate(2, 0);
        let x = [-1e3, -1e3];
        assert!(matches!(data.gradient(&x), Err(ViError::Domain(_))));
        let mut out = [0.0; 2];
        data.apply_into(&x, &mut out);
        assert!(out.iter().all(|v| v.is_nan()));
    }
}
