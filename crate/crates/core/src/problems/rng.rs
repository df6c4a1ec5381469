//! Seeded random numbers with a fixed, portable draw procedure.
//!
//! The generator is SplitMix64. A uniform draw takes the top 53 bits of
//! one output, `u = (next >> 11)·2⁻⁵³ ∈ [0, 1)`. A standard normal draw
//! consumes two uniforms `u₁, u₂` and returns the cosine branch of the
//! Box–Muller transform, `√(−2 ln(1 − u₁))·cos(2π u₂)`; the sine branch is
//! discarded so that every normal costs exactly two outputs.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct Rng {
    inner: SplitMix64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self {
            inner: SplitMix64::seed_from_u64(seed),
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Uniform on `[0, 1)`.
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on `[a, b)`.
    pub fn uniform(&mut self, a: f64, b: f64) -> f64 {
        a + (b - a) * self.unit()
    }

    pub fn normal(&mut self) -> f64 {
        let u1 = self.unit();
        let u2 = self.unit();
        (-2.0 * (1.0 - u1).ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    pub fn normals(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.normal()).collect()
    }

    pub fn uniforms(&mut self, n: usize, a: f64, b: f64) -> Vec<f64> {
        (0..n).map(|_| self.uniform(a, b)).collect()
    }
}
