//! Dense vector helpers and a row-major square matrix.
//!
//! Vectors are plain `[f64]` slices; the helpers here are the handful of
//! BLAS-1 kernels the solvers need.

use crate::error::{Result, ViError};

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm_sq(a: &[f64]) -> f64 {
    dot(a, a)
}

/// Euclidean norm.
pub fn norm(a: &[f64]) -> f64 {
    norm_sq(a).sqrt()
}

/// `‖a − b‖²`
pub fn dist_sq(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn dist(a: &[f64], b: &[f64]) -> f64 {
    dist_sq(a, b).sqrt()
}

/// `a − b` as a new vector.
pub fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `x − t·d` as a new vector.
pub fn step(x: &[f64], t: f64, d: &[f64]) -> Vec<f64> {
    debug_assert_eq!(x.len(), d.len());
    x.iter().zip(d).map(|(xi, di)| xi - t * di).collect()
}

/// `α·a + (1 − α)·b`
pub fn affine_combination(alpha: f64, a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    let beta = 1.0 - alpha;
    a.iter().zip(b).map(|(x, y)| alpha * x + beta * y).collect()
}

pub fn norm_inf(a: &[f64]) -> f64 {
    a.iter().fold(0.0, |m, x| m.max(x.abs()))
}

pub fn all_finite(a: &[f64]) -> bool {
    a.iter().all(|x| x.is_finite())
}

/// Square dense matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = *d;
        }
        m
    }

    /// Builds a matrix from row-major data of length `n²`.
    pub fn from_row_major(n: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != n * n {
            return Err(ViError::NotSquare {
                rows: n,
                cols: data.len().checked_div(n).unwrap_or(0),
            });
        }
        Ok(Self { n, data })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// `y = A·x`
    pub fn mul_vec_into(&self, x: &[f64], y: &mut [f64]) {
        debug_assert_eq!(x.len(), self.n);
        for (yi, row) in y.iter_mut().zip(self.data.chunks_exact(self.n)) {
            *yi = dot(row, x);
        }
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        self.mul_vec_into(x, &mut y);
        y
    }

    /// `y = Aᵀ·x`
    pub fn tr_mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for (row, xi) in self.data.chunks_exact(self.n).zip(x) {
            for (yj, aij) in y.iter_mut().zip(row) {
                *yj += aij * xi;
            }
        }
        y
    }

    /// `AᵀA`
    pub fn gram(&self) -> Self {
        let n = self.n;
        let mut g = Self::zeros(n);
        for row in self.data.chunks_exact(n) {
            for i in 0..n {
                let ri = row[i];
                if ri == 0.0 {
                    continue;
                }
                let gi = &mut g.data[i * n..(i + 1) * n];
                for (gij, rj) in gi.iter_mut().zip(row) {
                    *gij += ri * rj;
                }
            }
        }
        g
    }

    pub fn add_assign(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += b;
        }
    }

    pub fn is_finite(&self) -> bool {
        all_finite(&self.data)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;

    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

const SPECTRAL_REL_TOL: f64 = 1e-10;
const SPECTRAL_MAX_ITER: usize = 500;

/// Largest singular value of `w`, by power iteration on `WᵀW`.
///
/// Stops once the estimate changes by less than `1e-10` relative, or after
/// 500 iterations. Returns `0` for the zero matrix.
pub fn spectral_norm(w: &DenseMatrix) -> f64 {
    let n = w.dim();
    if n == 0 || w.as_slice().iter().all(|&a| a == 0.0) {
        return 0.0;
    }
    // Deterministic start with no zero components, so it is unlikely to be
    // orthogonal to the dominant right singular vector.
    let mut v: Vec<f64> = (0..n).map(|i| 1.0 + (i as f64 + 1.0).sqrt() * 1e-3).collect();
    let v_norm = norm(&v);
    v.iter_mut().for_each(|x| *x /= v_norm);

    let mut estimate = 0.0;
    for _ in 0..SPECTRAL_MAX_ITER {
        let wv = w.mul_vec(&v);
        let sigma = norm(&wv);
        if sigma == 0.0 {
            break;
        }
        let mut z = w.tr_mul_vec(&wv);
        let z_norm = norm(&z);
        if z_norm == 0.0 {
            estimate = sigma;
            break;
        }
        z.iter_mut().for_each(|x| *x /= z_norm);
        v = z;
        let converged = (sigma - estimate).abs() <= SPECTRAL_REL_TOL * sigma;
        estimate = sigma;
        if converged {
            break;
        }
    }
    // One more Rayleigh-style refinement from the final direction.
    norm(&w.mul_vec(&v)).max(estimate)
}
