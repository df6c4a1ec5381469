//! Serializable problem descriptions.
//!
//! A [`ProblemSpec`] is a flat JSON object
//! `{"family": …, "n": …, "seed": …, "params": {…}}` that regenerates an
//! instance deterministically. Instances themselves are never serialized.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::ViError;
use crate::problem::ViProblem;

use super::fractional::{self, gen_fractional};
use super::harker_pang::{self, gen_harker_pang};
use super::ncp::{gen_ncp, DEFAULT_KAPPA};
use super::pde::{gen_pde, AssemblyMode};
use super::rng::Rng;

pub const DEFAULT_DELTA: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    HarkerPang,
    Fractional,
    #[serde(rename = "NCP")]
    Ncp,
    #[serde(rename = "PDEFreeBoundary")]
    PdeFreeBoundary,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Self::HarkerPang => "HarkerPang",
            Self::Fractional => "Fractional",
            Self::Ncp => "NCP",
            Self::PdeFreeBoundary => "PDEFreeBoundary",
        }
    }
}

/// Family parameters. Only the fields relevant to the family may be set.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub assembly_mode: Option<AssemblyMode>,
}

/// Everything needed to regenerate a benchmark instance.
///
/// `n` is the problem dimension for every family; for
/// [`Family::PdeFreeBoundary`] it must be a perfect square `(N − 1)²`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemSpec {
    pub family: Family,
    pub n: usize,
    pub seed: u64,
    #[serde(default)]
    pub params: FamilyParams,
}

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("malformed problem spec: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("missing required field `{field}` for family {family}")]
    Missing { field: &'static str, family: &'static str },

    #[error("invalid field `{field}`: {reason}")]
    Invalid { field: &'static str, reason: String },

    #[error(transparent)]
    Build(#[from] ViError),
}

fn invalid(field: &'static str, reason: impl Into<String>) -> SpecError {
    SpecError::Invalid {
        field,
        reason: reason.into(),
    }
}

impl ProblemSpec {
    pub fn new(family: Family, n: usize, seed: u64) -> Self {
        Self {
            family,
            n,
            seed,
            params: FamilyParams::default(),
        }
    }

    /// Parses and normalizes.
    pub fn from_json(text: &str) -> Result<Self, SpecError> {
        let raw: Self = serde_json::from_str(text)?;
        raw.normalized()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("spec serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    /// Validates the spec and fills in family defaults (`kappa = 0.01`;
    /// `delta = 1`, `assembly_mode = standard`).
    pub fn normalized(&self) -> Result<Self, SpecError> {
        if self.n == 0 {
            return Err(invalid("n", "dimension must be at least 1"));
        }
        let fam = self.family.name();
        let p = &self.params;
        let reject = |field: &'static str, set: bool| {
            if set {
                Err(invalid(field, format!("not a parameter of family {fam}")))
            } else {
                Ok(())
            }
        };
        let params = match self.family {
            Family::HarkerPang | Family::Fractional => {
                reject("kappa", p.kappa.is_some())?;
                reject("p", p.p.is_some())?;
                reject("delta", p.delta.is_some())?;
                reject("assembly_mode", p.assembly_mode.is_some())?;
                FamilyParams::default()
            }
            Family::Ncp => {
                reject("p", p.p.is_some())?;
                reject("delta", p.delta.is_some())?;
                reject("assembly_mode", p.assembly_mode.is_some())?;
                let kappa = p.kappa.unwrap_or(DEFAULT_KAPPA);
                if !(kappa > 0.0 && kappa.is_finite()) {
                    return Err(invalid("kappa", format!("must be positive, got {kappa}")));
                }
                FamilyParams {
                    kappa: Some(kappa),
                    ..Default::default()
                }
            }
            Family::PdeFreeBoundary => {
                reject("kappa", p.kappa.is_some())?;
                let exponent = p.p.ok_or(SpecError::Missing { field: "p", family: fam })?;
                if !(exponent > 0.0 && exponent < 1.0) {
                    return Err(invalid("p", format!("must lie in (0, 1), got {exponent}")));
                }
                let delta = p.delta.unwrap_or(DEFAULT_DELTA);
                if !(delta >= 0.0 && delta.is_finite()) {
                    return Err(invalid("delta", format!("must be nonnegative, got {delta}")));
                }
                pde_subdivisions(self.n)?;
                FamilyParams {
                    kappa: None,
                    p: Some(exponent),
                    delta: Some(delta),
                    assembly_mode: Some(p.assembly_mode.unwrap_or_default()),
                }
            }
        };
        Ok(Self {
            params,
            ..self.clone()
        })
    }

    /// Generates the instance.
    pub fn build(&self) -> Result<ViProblem, SpecError> {
        let spec = self.normalized()?;
        let p = &spec.params;
        let problem = match spec.family {
            Family::HarkerPang => gen_harker_pang(spec.n, spec.seed)?,
            Family::Fractional => gen_fractional(spec.n, spec.seed)?,
            Family::Ncp => gen_ncp(spec.n, p.kappa.unwrap_or(DEFAULT_KAPPA), spec.seed)?,
            Family::PdeFreeBoundary => gen_pde(
                pde_subdivisions(spec.n)?,
                p.p.expect("normalized"),
                p.delta.unwrap_or(DEFAULT_DELTA),
                p.assembly_mode.unwrap_or_default(),
            )?,
        };
        Ok(problem)
    }

    /// Random starting point for this family, drawn from its own seed:
    /// uniform on `[0, 20]ⁿ`, `[2, 10]ⁿ`, or `[0, 1]ⁿ` (complementarity and
    /// PDE families).
    pub fn initial_point(&self, seed: u64) -> Vec<f64> {
        let (lo, hi) = match self.family {
            Family::HarkerPang => (0.0, harker_pang::BOX_UPPER),
            Family::Fractional => (fractional::BOX_LOWER, fractional::BOX_UPPER),
            Family::Ncp | Family::PdeFreeBoundary => (0.0, 1.0),
        };
        Rng::new(seed).uniforms(self.n, lo, hi)
    }
}

/// `N` such that `n = (N − 1)²`.
pub fn pde_subdivisions(n: usize) -> Result<usize, SpecError> {
    let side = (n as f64).sqrt().round() as usize;
    if side * side != n || side == 0 {
        return Err(invalid("n", format!("PDE dimension must be a perfect square (N-1)^2, got {n}")));
    }
    Ok(side + 1)
}
