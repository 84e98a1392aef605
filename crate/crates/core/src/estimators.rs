//! Closed-form estimators of a low quantile lying just below the sample
//! minimum m̄. Each moves m̄ towards the origin by an amount driven by the
//! sample spread σ̂ and the sample size n:
//!
//! | estimator | value                                  |
//! |-----------|----------------------------------------|
//! | ĉ₁        | m̄ · (1 − σ̂ / (μ̂ · log_k n))            |
//! | ĉ₂        | m̄ − σ̂ / n                              |
//! | ĉ₃        | m̄ − σ̂ · √(ln ln n / 2n)                |
//! | ĉ₄        | m̄ − σ̂ · √(−ln(ν/2) / 2n)               |
//!
//! ĉ₁ is multiplicative and only meaningful for positive data; the other
//! three are additive and translation-equivariant.

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use crate::sample::Sample;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EstimatorError {
    #[error("need at least {required} observations, got {n}")]
    InsufficientSample { n: usize, required: usize },
    #[error("sample standard deviation is zero")]
    ZeroSpread,
    #[error("multiplicative estimator requires a positive sample minimum, got {min}")]
    RequiresPositiveSupport { min: f64 },
    #[error("tail probability nu = {0} is outside (0, 1)")]
    InvalidNu(f64),
    #[error("logarithm base k = {0} must exceed 1")]
    InvalidBase(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct EstimatorConfig {
    /// Logarithm base for ĉ₁.
    pub k: f64,
    /// Tail probability ν for ĉ₄.
    pub nu: f64,
}

impl Default for EstimatorConfig {
    fn default() -> Self {
        Self { k: 10.0, nu: 0.05 }
    }
}

impl EstimatorConfig {
    pub fn validate(&self) -> Result<(), EstimatorError> {
        if !(self.k > 1.0 && self.k.is_finite()) {
            return Err(EstimatorError::InvalidBase(self.k));
        }
        if !(self.nu > 0.0 && self.nu < 1.0) {
            return Err(EstimatorError::InvalidNu(self.nu));
        }
        Ok(())
    }
}

/// Which closed-form estimator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Estimator {
    C1,
    C2,
    C3,
    C4,
}

impl Estimator {
    pub const ALL: [Estimator; 4] = [Estimator::C1, Estimator::C2, Estimator::C3, Estimator::C4];

    pub fn name(self) -> &'static str {
        match self {
            Estimator::C1 => "c1",
            Estimator::C2 => "c2",
            Estimator::C3 => "c3",
            Estimator::C4 => "c4",
        }
    }

    pub fn estimate(self, sample: &Sample, cfg: &EstimatorConfig) -> Result<f64, EstimatorError> {
        match self {
            Estimator::C1 => c1(sample, cfg).map(|e| e.value),
            Estimator::C2 => c2(sample),
            Estimator::C3 => c3(sample),
            Estimator::C4 => c4(sample, cfg),
        }
    }
}

/// Result of the multiplicative estimator. ĉ₁ is not clamped; `negative`
/// flags results below zero so callers can decide what to do with them.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiplicativeEstimate {
    pub value: f64,
    pub negative: bool,
}

fn require_n(sample: &Sample, required: usize) -> Result<(), EstimatorError> {
    if sample.n() < required {
        Err(EstimatorError::InsufficientSample {
            n: sample.n(),
            required,
        })
    } else {
        Ok(())
    }
}

pub fn c1(sample: &Sample, cfg: &EstimatorConfig) -> Result<MultiplicativeEstimate, EstimatorError> {
    cfg.validate()?;
    require_n(sample, 2)?;
    if sample.min() <= 0.0 {
        return Err(EstimatorError::RequiresPositiveSupport { min: sample.min() });
    }
    if sample.sd() == 0.0 {
        return Err(EstimatorError::ZeroSpread);
    }
    let log_k_n = (sample.n() as f64).ln() / cfg.k.ln();
    let cv = sample.sd() / sample.mean();
    let value = sample.min() * (1.0 - cv / log_k_n);
    Ok(MultiplicativeEstimate {
        value,
        negative: value < 0.0,
    })
}

pub fn c2(sample: &Sample) -> Result<f64, EstimatorError> {
    require_n(sample, 2)?;
    Ok(sample.min() - sample.sd() / sample.n() as f64)
}

pub fn c3(sample: &Sample) -> Result<f64, EstimatorError> {
    let bound = ecdf_deviation_bound(sample.n(), BoundKind::IteratedLog, 0.0)?;
    Ok(sample.min() - sample.sd() * bound)
}

pub fn c4(sample: &Sample, cfg: &EstimatorConfig) -> Result<f64, EstimatorError> {
    cfg.validate()?;
    require_n(sample, 2)?;
    let bound = ecdf_deviation_bound(sample.n(), BoundKind::Dkw, cfg.nu)?;
    Ok(sample.min() - sample.sd() * bound)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundKind {
    /// √(ln ln n / 2n)
    IteratedLog,
    /// √(−ln(ν/2) / 2n), holding with probability at least 1 − ν.
    Dkw,
}

/// Uniform deviation bound of the empirical cdf used by ĉ₃ and ĉ₄.
/// `nu` is ignored for the iterated-log bound.
pub fn ecdf_deviation_bound(n: usize, kind: BoundKind, nu: f64) -> Result<f64, EstimatorError> {
    let nf = n as f64;
    match kind {
        BoundKind::IteratedLog => {
            // ln ln n < 0 for n = 2
            if n < 3 {
                return Err(EstimatorError::InsufficientSample { n, required: 3 });
            }
            Ok((nf.ln().ln() / (2.0 * nf)).sqrt())
        }
        BoundKind::Dkw => {
            if n < 1 {
                return Err(EstimatorError::InsufficientSample { n, required: 1 });
            }
            if !(nu > 0.0 && nu < 1.0) {
                return Err(EstimatorError::InvalidNu(nu));
            }
            Ok((-(nu / 2.0).ln() / (2.0 * nf)).sqrt())
        }
    }
}

/// All four estimates for one sample; estimators that cannot be evaluated
/// carry their error.
#[derive(Debug, Clone, PartialEq)]
pub struct AllEstimates {
    pub c1: Result<MultiplicativeEstimate, EstimatorError>,
    pub c2: Result<f64, EstimatorError>,
    pub c3: Result<f64, EstimatorError>,
    pub c4: Result<f64, EstimatorError>,
}

pub fn all_estimates(sample: &Sample, cfg: &EstimatorConfig) -> AllEstimates {
    AllEstimates {
        c1: c1(sample, cfg),
        c2: c2(sample),
        c3: c3(sample),
        c4: c4(sample, cfg),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(v: &[f64]) -> Sample {
        Sample::new(v.to_vec()).unwrap()
    }

    const CFG: EstimatorConfig = EstimatorConfig { k: 10.0, nu: 0.05 };

    #[test]
    fn hand_values() {
        let triple = s(&[4.0, 5.0, 6.0]);
        let pair = s(&[4.0, 6.0]);
        let log10 = |x: f64| x.ln() / 10f64.ln();
        let c1_triple = 4.0 * (1.0 - 0.2 / log10(3.0));
        let c1_pair = 4.0 * (1.0 - (2f64.sqrt() / 5.0) / log10(2.0));
        assert!((c1(&triple, &CFG).unwrap().value - c1_triple).abs() < 1e-12);
        assert!((c1(&pair, &CFG).unwrap().value - c1_pair).abs() < 1e-12);
        assert!((c1(&triple, &CFG).unwrap().value - 2.323277).abs() < 1e-6);
        assert!((c1(&pair, &CFG).unwrap().value - 0.241667).abs() < 1e-6);
        assert!((c2(&pair).unwrap() - 3.292893).abs() < 1e-6);
        assert!((c2(&triple).unwrap() - 3.666667).abs() < 1e-6);
        assert!((c3(&triple).unwrap() - 3.874801).abs() < 1e-6);
        assert!((c4(&triple, &CFG).unwrap() - 3.215900).abs() < 1e-6);
    }

    #[test]
    fn constant_samples_return_the_minimum() {
        let c = s(&[2.5; 6]);
        assert_eq!(c2(&c).unwrap(), 2.5);
        assert_eq!(c3(&c).unwrap(), 2.5);
        assert_eq!(c4(&c, &CFG).unwrap(), 2.5);
        assert_eq!(c1(&c, &CFG), Err(EstimatorError::ZeroSpread));
    }

    #[test]
    fn error_paths() {
        let pair = s(&[4.0, 6.0]);
        assert_eq!(
            c3(&pair),
            Err(EstimatorError::InsufficientSample { n: 2, required: 3 })
        );
        let one = s(&[4.0]);
        assert!(matches!(c2(&one), Err(EstimatorError::InsufficientSample { .. })));
        assert!(matches!(c1(&one, &CFG), Err(EstimatorError::InsufficientSample { .. })));
        let negative = s(&[-1.0, 2.0, 3.0]);
        assert!(matches!(
            c1(&negative, &CFG),
            Err(EstimatorError::RequiresPositiveSupport { .. })
        ));
        let bad_nu = EstimatorConfig { nu: 1.5, ..CFG };
        assert_eq!(c4(&pair, &bad_nu), Err(EstimatorError::InvalidNu(1.5)));
        let bad_k = EstimatorConfig { k: 1.0, ..CFG };
        assert_eq!(c1(&pair, &bad_k), Err(EstimatorError::InvalidBase(1.0)));
    }

    #[test]
    fn c1_negative_is_flagged_not_clamped() {
        let wide = s(&[0.1, 5.0, 20.0]);
        let e = c1(&wide, &CFG).unwrap();
        assert!(e.value < 0.0);
        assert!(e.negative);
    }

    #[test]
    fn deviation_bounds() {
        let il = ecdf_deviation_bound(3, BoundKind::IteratedLog, 0.0).unwrap();
        assert!((il - 0.125199).abs() < 1e-6);
        let dkw = ecdf_deviation_bound(3, BoundKind::Dkw, 0.05).unwrap();
        assert!((dkw - 0.784100).abs() < 1e-6);
        let d10 = ecdf_deviation_bound(10, BoundKind::Dkw, 0.05).unwrap();
        let d100 = ecdf_deviation_bound(100, BoundKind::Dkw, 0.05).unwrap();
        assert!(d100 < d10);
        assert!(ecdf_deviation_bound(2, BoundKind::IteratedLog, 0.0).is_err());
        assert!(ecdf_deviation_bound(1, BoundKind::Dkw, 0.05).is_ok());
    }

    #[test]
    fn c4_subtrahend_positive_at_default_nu() {
        let triple = s(&[4.0, 5.0, 6.0]);
        assert!(c4(&triple, &CFG).unwrap() < triple.min());
    }
}
