//! Parametric families, their shifted and truncated versions, and the
//! expected log-likelihood of a candidate model under a true one.

mod density;
mod expected;
mod wrappers;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::sample::Sample;

pub use density::{Density, FamilyKind};
pub use expected::{expected_log_likelihood, Candidate};
pub use wrappers::{truncate_family, ShiftedFamily, TruncatedFamily};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("unknown distribution family `{0}`")]
    UnknownFamily(String),
    #[error("invalid parameters for {family}: {reason}")]
    InvalidTheta { family: String, reason: String },
    #[error("probability {0} is outside (0, 1)")]
    InvalidProbability(f64),
    #[error("sample size must be at least 1")]
    EmptySample,
    #[error("truncation at {c} leaves no probability mass")]
    DegenerateTruncation { c: f64 },
    #[error("registry: {0}")]
    Registry(String),
}

/// Parameter values in the family's documented order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParamVector(Vec<f64>);

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }
}

impl From<Vec<f64>> for ParamVector {
    fn from(values: Vec<f64>) -> Self {
        Self(values)
    }
}

impl From<&[f64]> for ParamVector {
    fn from(values: &[f64]) -> Self {
        Self(values.to_vec())
    }
}

impl<const N: usize> From<[f64; N]> for ParamVector {
    fn from(values: [f64; N]) -> Self {
        Self(values.to_vec())
    }
}

impl fmt::Display for ParamVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A distribution family: the density math plus its registry metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Family {
    kind: FamilyKind,
    description: String,
    param_names: Vec<String>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    default_grid: Vec<ParamVector>,
}

#[derive(Deserialize)]
struct RegistryFile {
    family: Vec<RegistryEntry>,
}

#[derive(Deserialize)]
struct RegistryEntry {
    name: FamilyKind,
    description: String,
    params: Vec<String>,
    lower: Vec<f64>,
    upper: Vec<f64>,
    grid: Vec<Vec<f64>>,
}

/// The registry shipped with the crate.
pub const REGISTRY_TOML: &str = include_str!("../../registry/families.toml");

/// Parses a registry document and checks it against the built-in families.
pub fn parse_registry(text: &str) -> Result<Vec<Family>, DistError> {
    let file: RegistryFile =
        toml::from_str(text).map_err(|e| DistError::Registry(e.to_string()))?;
    file.family
        .into_iter()
        .map(|e| {
            let k = e.name.param_count();
            if e.params.len() != k || e.lower.len() != k || e.upper.len() != k {
                return Err(DistError::Registry(format!(
                    "{} expects {k} parameters",
                    e.name.name()
                )));
            }
            let family = Family {
                kind: e.name,
                description: e.description,
                param_names: e.params,
                lower: e.lower,
                upper: e.upper,
                default_grid: e.grid.into_iter().map(ParamVector).collect(),
            };
            if family.default_grid.is_empty() {
                return Err(DistError::Registry(format!("{} has an empty grid", family.name())));
            }
            for start in &family.default_grid {
                family.validate(start)?;
            }
            Ok(family)
        })
        .collect()
}

/// All registered families.
pub fn registry() -> &'static [Family] {
    static REGISTRY: OnceLock<Vec<Family>> = OnceLock::new();
    REGISTRY.get_or_init(|| parse_registry(REGISTRY_TOML).expect("bundled registry is valid"))
}

impl Family {
    /// Looks a family up by registry name.
    pub fn get(name: &str) -> Result<Family, DistError> {
        registry()
            .iter()
            .find(|f| f.name() == name)
            .cloned()
            .ok_or_else(|| DistError::UnknownFamily(name.to_string()))
    }

    pub fn of(kind: FamilyKind) -> Family {
        registry()
            .iter()
            .find(|f| f.kind == kind)
            .cloned()
            .expect("every kind is registered")
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    pub fn description(&self) -> &str {
        &self.description
    }

    pub fn param_count(&self) -> usize {
        self.param_names.len()
    }

    pub fn param_names(&self) -> &[String] {
        &self.param_names
    }

    /// `(lower, upper)` for each parameter; values must satisfy `lower <= v < upper`.
    pub fn param_box(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.lower.iter().copied().zip(self.upper.iter().copied())
    }

    pub fn default_grid(&self) -> &[ParamVector] {
        &self.default_grid
    }

    pub fn positive_support(&self) -> bool {
        self.kind.positive_support()
    }

    pub fn is_valid(&self, theta: &[f64]) -> bool {
        theta.len() == self.param_count()
            && theta
                .iter()
                .zip(self.param_box())
                .all(|(&v, (lo, hi))| v >= lo && v < hi)
    }

    pub fn validate(&self, theta: &ParamVector) -> Result<(), DistError> {
        if theta.len() != self.param_count() {
            return Err(self.invalid(format!(
                "expected {} parameters, got {}",
                self.param_count(),
                theta.len()
            )));
        }
        for ((&v, (lo, hi)), name) in theta
            .as_slice()
            .iter()
            .zip(self.param_box())
            .zip(&self.param_names)
        {
            if !(v >= lo && v < hi) {
                return Err(self.invalid(format!("{name} = {v} is outside [{lo}, {hi})")));
            }
        }
        Ok(())
    }

    fn invalid(&self, reason: String) -> DistError {
        DistError::InvalidTheta {
            family: self.name().to_string(),
            reason,
        }
    }

    /// The density at `theta`, validated once.
    pub fn density(&self, theta: &ParamVector) -> Result<Density, DistError> {
        self.validate(theta)?;
        Ok(self.kind.density(theta.as_slice()))
    }

    /// Like [`Family::density`] for optimizer inner loops: `None` outside the box.
    pub fn density_if_valid(&self, theta: &[f64]) -> Option<Density> {
        self.is_valid(theta).then(|| self.kind.density(theta))
    }

    pub fn log_pdf(&self, theta: &ParamVector, x: f64) -> Result<f64, DistError> {
        Ok(self.density(theta)?.log_pdf(x))
    }

    pub fn pdf(&self, theta: &ParamVector, x: f64) -> Result<f64, DistError> {
        Ok(self.density(theta)?.pdf(x))
    }

    pub fn cdf(&self, theta: &ParamVector, x: f64) -> Result<f64, DistError> {
        Ok(self.density(theta)?.cdf(x))
    }

    pub fn sf(&self, theta: &ParamVector, x: f64) -> Result<f64, DistError> {
        Ok(self.density(theta)?.sf(x))
    }

    pub fn quantile(&self, theta: &ParamVector, p: f64) -> Result<f64, DistError> {
        check_probability(p)?;
        Ok(self.density(theta)?.quantile(p))
    }

    pub fn mean(&self, theta: &ParamVector) -> Result<Option<f64>, DistError> {
        Ok(self.density(theta)?.mean())
    }

    pub fn log_likelihood(&self, theta: &ParamVector, xs: &[f64]) -> Result<f64, DistError> {
        Ok(self.density(theta)?.log_likelihood(xs))
    }

    /// `n` iid draws by quantile inversion; identical inputs give identical output.
    pub fn sample(&self, theta: &ParamVector, n: usize, seed: u64) -> Result<Sample, DistError> {
        if n == 0 {
            return Err(DistError::EmptySample);
        }
        let values = self.density(theta)?.sample_values(n, seed);
        Sample::new(values).map_err(|e| self.invalid(format!("sampler produced {e}")))
    }
}

/// log f(x|θ), validating θ against the family's box.
pub fn eval_log_pdf(family: &Family, theta: &ParamVector, x: f64) -> Result<f64, DistError> {
    family.log_pdf(theta, x)
}

pub(crate) fn check_probability(p: f64) -> Result<(), DistError> {
    if p > 0.0 && p < 1.0 {
        Ok(())
    } else {
        Err(DistError::InvalidProbability(p))
    }
}
