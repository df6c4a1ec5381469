//! Closed convex feasible sets with closed-form projection.

use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Result, ViError};

/// A closed convex set `Ω ⊆ ℝⁿ` whose Euclidean projection is componentwise.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum FeasibleSet {
    /// `{x : lo ≤ x ≤ hi}`
    Box { lo: Vec<f64>, hi: Vec<f64> },
    /// `{x : x ≥ 0}`
    NonnegativeOrthant { n: usize },
}

impl FeasibleSet {
    pub fn new_box(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        check_dim(lo.len(), hi.len())?;
        if let Some((index, (&l, &h))) = lo
            .iter()
            .zip(&hi)
            .enumerate()
            .find(|(_, (l, h))| !(l <= h))
        {
            return Err(ViError::InvalidBounds { index, lo: l, hi: h });
        }
        Ok(Self::Box { lo, hi })
    }

    /// `{x : lo·l ≤ x ≤ hi·l}` with `l` the all-ones vector.
    pub fn uniform_box(n: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new_box(vec![lo; n], vec![hi; n])
    }

    pub fn orthant(n: usize) -> Self {
        Self::NonnegativeOrthant { n }
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Box { lo, .. } => lo.len(),
            Self::NonnegativeOrthant { n } => *n,
        }
    }

    /// Euclidean projection `P_Ω(x)`.
    pub fn project(&self, x: &[f64]) -> Result<Vec<f64>> {
        check_dim(self.dim(), x.len())?;
        let mut out = x.to_vec();
        self.project_in_place(&mut out);
        Ok(out)
    }

    /// Projects `x` onto the set in place. The caller guarantees the length.
    pub fn project_in_place(&self, x: &mut [f64]) {
        debug_assert_eq!(x.len(), self.dim());
        match self {
            Self::Box { lo, hi } => {
                for ((xi, l), h) in x.iter_mut().zip(lo).zip(hi) {
                    *xi = xi.clamp(*l, *h);
                }
            }
            Self::NonnegativeOrthant { .. } => {
                for xi in x.iter_mut() {
                    *xi = xi.max(0.0);
                }
            }
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        if x.len() != self.dim() {
            return false;
        }
        match self {
            Self::Box { lo, hi } => x
                .iter()
                .zip(lo.iter().zip(hi))
                .all(|(xi, (l, h))| l <= xi && xi <= h),
            Self::NonnegativeOrthant { .. } => x.iter().all(|xi| *xi >= 0.0),
        }
    }
}
