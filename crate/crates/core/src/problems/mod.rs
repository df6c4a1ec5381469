//! Seeded generators for the four benchmark families.
//!
//! | family | operator | set | known solution |
//! |---|---|---|---|
//! | [`harker_pang`] | `Wx + w₀`, monotone | `[0, 20]ⁿ` | none |
//! | [`fractional`] | `∇φ`, `φ` pseudoconvex | `[2, 10]ⁿ` | none |
//! | [`ncp`] | `(e^{−xᵀUx} + κ)(Px + ι)` | `x ≥ 0` | planted `x̂` |
//! | [`pde`] | `Bx + E·max(0,x)^p + V·e^{−x} + q` | `x ≥ 0` | grid reference only |
//!
//! Every generator is a pure function of its arguments: the same seed gives
//! a bitwise-identical instance.

pub mod fractional;
pub mod harker_pang;
pub mod ncp;
pub mod pde;
pub mod rng;
pub mod spec;

pub use fractional::{gen_fractional, FractionalData};
pub use harker_pang::{gen_harker_pang, AffineViData};
pub use ncp::{gen_ncp, NcpData};
pub use pde::{analytic_grid, gen_pde, pde_coefficients, pde_grid_error, AssemblyMode, PdeData};
pub use rng::Rng;
pub use spec::{Family, FamilyParams, ProblemSpec, SpecError};
