//! Free-boundary problem on the unit square, discretized by the five-point
//! stencil into a complementarity problem over `x ≥ 0`:
//!
//! ```text
//! H(x) = Bx + E·max(0, x)^p + V·exp(−x) + q
//! ```
//!
//! `B` is the `(N−1)² × (N−1)²` block tridiagonal stencil matrix (4 on the
//! diagonal, −1 for each interior neighbour), `E = 9h²/(1−p)²·I`,
//! `V = δh²·I`, and unknowns are ordered `u_{1,1}, u_{2,1}, …, u_{N−1,N−1}`
//! (first index fastest). `B` is applied matrix-free.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result, ViError};
use crate::linalg::DenseMatrix;
use crate::problem::{Operator, ViProblem};
use crate::set::FeasibleSet;

/// How boundary data enter the constant term `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssemblyMode {
    /// `q_i = −h²c_i − Σ v(boundary neighbours of node i)`.
    #[default]
    Standard,
    /// `q_i = −h²c_i − v_i`, with `v` sampled at the interior node itself.
    Literal,
}

/// `(c, v, u)` at `(ξ, ς)`, with `r = √(ξ² + ς²)` and `s = (3r − 1)/2`:
///
/// ```text
/// u = v = s^{2/(1−p)}·max(0, r − 1/3)
/// c = 9/(r(1−p)²)·s^{2p/(1−p)}·max(0, r − 1/3) + δ·exp(−u)
/// ```
///
/// The power terms are only evaluated where `r > 1/3`; elsewhere `u = 0` and
/// `c = δ`.
pub fn pde_coefficients(xi: f64, varsigma: f64, p: f64, delta: f64) -> (f64, f64, f64) {
    let r = xi.hypot(varsigma);
    let ramp = (r - 1.0 / 3.0).max(0.0);
    if ramp == 0.0 {
        return (delta, 0.0, 0.0);
    }
    let s = 0.5 * (3.0 * r - 1.0);
    let one_minus_p = 1.0 - p;
    let u = s.powf(2.0 / one_minus_p) * ramp;
    let c = 9.0 / (r * one_minus_p * one_minus_p) * s.powf(2.0 * p / one_minus_p) * ramp + delta * (-u).exp();
    (c, u, u)
}

/// Analytic reference `u(ξ, ς)`.
pub fn analytic_u(xi: f64, varsigma: f64, p: f64) -> f64 {
    pde_coefficients(xi, varsigma, p, 0.0).2
}

/// `max(0, x)^p`, computed as `exp(p·ln x)` for `x > 0`.
pub fn positive_power(x: f64, p: f64) -> f64 {
    if x > 0.0 {
        (p * x.ln()).exp()
    } else {
        0.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PdeData {
    /// Number of subintervals `N` per side.
    pub subdivisions: usize,
    pub p: f64,
    pub delta: f64,
    pub mode: AssemblyMode,
    pub h: f64,
    /// Diagonal entry of `E`.
    pub e_diag: f64,
    /// Diagonal entry of `V`.
    pub v_diag: f64,
    pub q: Vec<f64>,
}

fn validate(subdivisions: usize, p: f64, delta: f64) -> Result<()> {
    if subdivisions < 2 {
        return Err(ViError::InvalidParameter {
            name: "N",
            reason: format!("need at least 2 subintervals, got {subdivisions}"),
        });
    }
    if !(p > 0.0 && p < 1.0) {
        return Err(ViError::InvalidParameter {
            name: "p",
            reason: format!("must lie in (0, 1), got {p}"),
        });
    }
    if !(delta >= 0.0 && delta.is_finite()) {
        return Err(ViError::InvalidParameter {
            name: "delta",
            reason: format!("must be nonnegative, got {delta}"),
        });
    }
    Ok(())
}

impl PdeData {
    pub fn assemble(subdivisions: usize, p: f64, delta: f64, mode: AssemblyMode) -> Result<Self> {
        validate(subdivisions, p, delta)?;
        let big_n = subdivisions;
        let h = 1.0 / big_n as f64;
        let m = big_n - 1;
        let mut q = Vec::with_capacity(m * m);
        for j in 1..big_n {
            for i in 1..big_n {
                let (xi, vs) = (i as f64 * h, j as f64 * h);
                let (c, v_here, _) = pde_coefficients(xi, vs, p, delta);
                let boundary = match mode {
                    AssemblyMode::Literal => v_here,
                    AssemblyMode::Standard => {
                        let v = |a: usize, b: usize| pde_coefficients(a as f64 * h, b as f64 * h, p, delta).1;
                        let mut sum = 0.0;
                        if i == 1 {
                            sum += v(0, j);
                        }
                        if i == big_n - 1 {
                            sum += v(big_n, j);
                        }
                        if j == 1 {
                            sum += v(i, 0);
                        }
                        if j == big_n - 1 {
                            sum += v(i, big_n);
                        }
                        sum
                    }
                };
                q.push(-h * h * c - boundary);
            }
        }
        let one_minus_p = 1.0 - p;
        Ok(Self {
            subdivisions,
            p,
            delta,
            mode,
            h,
            e_diag: 9.0 * h * h / (one_minus_p * one_minus_p),
            v_diag: delta * h * h,
            q,
        })
    }

    /// Interior nodes per side, `N − 1`.
    pub fn side(&self) -> usize {
        self.subdivisions - 1
    }

    pub fn dim(&self) -> usize {
        self.side() * self.side()
    }

    /// `y = Bx` via the stencil.
    pub fn apply_stencil(&self, x: &[f64], y: &mut [f64]) {
        let m = self.side();
        for j in 0..m {
            for i in 0..m {
                let k = j * m + i;
                let mut acc = 4.0 * x[k];
                if i > 0 {
                    acc -= x[k - 1];
                }
                if i + 1 < m {
                    acc -= x[k + 1];
                }
                if j > 0 {
                    acc -= x[k - m];
                }
                if j + 1 < m {
                    acc -= x[k + m];
                }
                y[k] = acc;
            }
        }
    }

    /// `B` as a dense matrix.
    pub fn stencil_matrix(&self) -> DenseMatrix {
        let n = self.dim();
        let mut b = DenseMatrix::zeros(n);
        let mut e = vec![0.0; n];
        let mut col = vec![0.0; n];
        for k in 0..n {
            e[k] = 1.0;
            self.apply_stencil(&e, &mut col);
            for (i, v) in col.iter().enumerate() {
                b[(i, k)] = *v;
            }
            e[k] = 0.0;
        }
        b
    }

    /// Analytic solution sampled at the interior nodes, in unknown order.
    pub fn analytic_grid(&self) -> Vec<f64> {
        analytic_grid(self.subdivisions, self.p)
    }
}

impl Operator for PdeData {
    fn dim(&self) -> usize {
        self.q.len()
    }

    fn apply_into(&self, x: &[f64], out: &mut [f64]) {
        self.apply_stencil(x, out);
        for ((o, xi), qi) in out.iter_mut().zip(x).zip(&self.q) {
            *o += self.e_diag * positive_power(*xi, self.p) + self.v_diag * (-xi).exp() + qi;
        }
    }
}

pub fn analytic_grid(subdivisions: usize, p: f64) -> Vec<f64> {
    let h = 1.0 / subdivisions as f64;
    let mut out = Vec::with_capacity((subdivisions - 1).pow(2));
    for j in 1..subdivisions {
        for i in 1..subdivisions {
            out.push(analytic_u(i as f64 * h, j as f64 * h, p));
        }
    }
    out
}

/// Largest deviation of `x` from the analytic solution over interior nodes.
pub fn pde_grid_error(x: &[f64], subdivisions: usize, p: f64) -> Result<f64> {
    if subdivisions < 2 {
        return Err(ViError::InvalidParameter {
            name: "N",
            reason: format!("need at least 2 subintervals, got {subdivisions}"),
        });
    }
    check_dim((subdivisions - 1).pow(2), x.len())?;
    Ok(x.iter()
        .zip(analytic_grid(subdivisions, p))
        .fold(0.0, |m, (a, b)| m.max((a - b).abs())))
}

pub fn pde_problem(data: PdeData) -> Result<ViProblem> {
    let n = data.dim();
    ViProblem::new(data, FeasibleSet::orthant(n))
}

pub fn gen_pde(subdivisions: usize, p: f64, delta: f64, mode: AssemblyMode) -> Result<ViProblem> {
    pde_problem(PdeData::assemble(subdivisions, p, delta, mode)?)
}
