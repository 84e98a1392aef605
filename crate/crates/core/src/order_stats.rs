//! Distribution of the minimum of `n` iid draws:
//! F_min(x) = 1 − (1 − F(x))ⁿ and its inverse F⁻¹(1 − (1 − q)^{1/n}).

use serde::{Deserialize, Serialize};

use crate::distributions::{check_probability, DistError, Family, ParamVector};
use crate::special::ln_complement;

/// The sample-minimum distribution of `n` draws from `base(theta)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinDistribution {
    pub base: Family,
    pub theta: ParamVector,
    pub n: usize,
}

impl MinDistribution {
    pub fn new(base: Family, theta: ParamVector, n: usize) -> Result<Self, DistError> {
        base.validate(&theta)?;
        if n == 0 {
            return Err(DistError::EmptySample);
        }
        Ok(Self { base, theta, n })
    }

    pub fn cdf(&self, x: f64) -> Result<f64, DistError> {
        min_cdf(&self.base, &self.theta, self.n, x)
    }

    pub fn quantile(&self, q: f64) -> Result<f64, DistError> {
        min_quantile(&self.base, &self.theta, self.n, q)
    }
}

/// 1 − (1 − F(x))ⁿ evaluated as −expm1(n · log(1 − F(x))).
pub fn min_cdf(family: &Family, theta: &ParamVector, n: usize, x: f64) -> Result<f64, DistError> {
    if n == 0 {
        return Err(DistError::EmptySample);
    }
    let d = family.density(theta)?;
    let cdf = d.cdf(x);
    if n == 1 {
        return Ok(cdf);
    }
    let ln_surv = ln_complement(cdf, d.sf(x));
    Ok(-(n as f64 * ln_surv).exp_m1())
}

/// The per-draw probability whose base quantile is the q-quantile of the minimum.
pub fn min_quantile_level(q: f64, n: usize) -> f64 {
    if n == 1 {
        q
    } else {
        -((-q).ln_1p() / n as f64).exp_m1()
    }
}

/// F⁻¹(1 − (1 − q)^{1/n} | θ).
pub fn min_quantile(family: &Family, theta: &ParamVector, n: usize, q: f64) -> Result<f64, DistError> {
    check_probability(q)?;
    if n == 0 {
        return Err(DistError::EmptySample);
    }
    let d = family.density(theta)?;
    Ok(d.quantile(min_quantile_level(q, n)))
}

/// The 1% quantile of the sample minimum, used as the reference shift.
pub fn baseline_q01(family: &Family, theta: &ParamVector, n: usize) -> Result<f64, DistError> {
    min_quantile(family, theta, n, 0.01)
}

/// Where an estimate ĉ sits relative to the sample and the minimum's quantiles.
/// Distances are divided by `pop_mean`; negative values mean ĉ is below the
/// reference point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub f_at_c: f64,
    pub rel_dist_to_min: f64,
    pub signed_rel_dist_q05: f64,
    pub signed_rel_dist_q01: f64,
}

pub fn distance_report(
    c_hat: f64,
    family: &Family,
    theta: &ParamVector,
    n: usize,
    sample_min: f64,
    pop_mean: f64,
) -> Result<DistanceReport, DistError> {
    if pop_mean == 0.0 || !pop_mean.is_finite() {
        return Err(DistError::InvalidTheta {
            family: family.name().to_string(),
            reason: format!("normalizing mean {pop_mean} must be finite and nonzero"),
        });
    }
    let f_at_c = family.cdf(theta, c_hat)?;
    let q05 = min_quantile(family, theta, n, 0.05)?;
    let q01 = min_quantile(family, theta, n, 0.01)?;
    Ok(DistanceReport {
        f_at_c,
        rel_dist_to_min: (sample_min - c_hat) / pop_mean,
        signed_rel_dist_q05: (c_hat - q05) / pop_mean,
        signed_rel_dist_q01: (c_hat - q01) / pop_mean,
    })
}
