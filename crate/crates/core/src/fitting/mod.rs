//! Maximum-likelihood fitting under each strategy for the unknown minimum.
//!
//! Every strategy reduces to a negative log-likelihood over θ (and, for
//! `infer-c`, the location c) minimized by a Nelder–Mead simplex started from
//! each point of a grid. Constraints are enforced with a `+∞` penalty.

pub mod simplex;

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distributions::{DistError, Family, ParamVector};
use crate::estimators::{Estimator, EstimatorConfig, EstimatorError};
use crate::order_stats::min_quantile_level;
use crate::sample::Sample;
use simplex::{minimize, SimplexOptions, SimplexOutcome};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FitError {
    #[error("{family} with {params} parameters needs at least {required} observations, got {n}")]
    InsufficientSample {
        family: String,
        params: usize,
        required: usize,
        n: usize,
    },
    #[error(transparent)]
    Estimator(#[from] EstimatorError),
    #[error(transparent)]
    Distribution(#[from] DistError),
    #[error("invalid method configuration: {0}")]
    InvalidMethod(String),
    #[error("invalid fit configuration: {0}")]
    InvalidConfig(String),
    #[error("fit diverged; AIC is undefined")]
    DivergedFit,
    #[error("unknown method `{0}`")]
    UnknownMethod(String),
}

/// The seven strategies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MethodKind {
    /// Fit the data as-is.
    Baseline,
    ShiftC1,
    ShiftC2,
    ShiftC3,
    ShiftC4,
    /// Add a location parameter c constrained to [c_lower_bound, m̄).
    InferC,
    /// Re-shift by the θ-dependent median of the sample minimum at every evaluation.
    Iterated,
}

impl MethodKind {
    pub const ALL: [MethodKind; 7] = [
        MethodKind::Baseline,
        MethodKind::ShiftC1,
        MethodKind::ShiftC2,
        MethodKind::ShiftC3,
        MethodKind::ShiftC4,
        MethodKind::InferC,
        MethodKind::Iterated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MethodKind::Baseline => "baseline",
            MethodKind::ShiftC1 => "shift-c1",
            MethodKind::ShiftC2 => "shift-c2",
            MethodKind::ShiftC3 => "shift-c3",
            MethodKind::ShiftC4 => "shift-c4",
            MethodKind::InferC => "infer-c",
            MethodKind::Iterated => "iterated",
        }
    }

    pub fn parse(name: &str) -> Result<Self, FitError> {
        Self::ALL
            .into_iter()
            .find(|m| m.name() == name)
            .ok_or_else(|| FitError::UnknownMethod(name.to_string()))
    }

    pub fn estimator(self) -> Option<Estimator> {
        match self {
            MethodKind::ShiftC1 => Some(Estimator::C1),
            MethodKind::ShiftC2 => Some(Estimator::C2),
            MethodKind::ShiftC3 => Some(Estimator::C3),
            MethodKind::ShiftC4 => Some(Estimator::C4),
            _ => None,
        }
    }

    /// Parameters counted by AIC beyond θ.
    pub fn extra_params(self) -> usize {
        usize::from(self == MethodKind::InferC)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShiftMethod {
    pub kind: MethodKind,
    #[serde(default)]
    pub estimator_cfg: EstimatorConfig,
    /// Lower end of the admissible c interval for `infer-c`; may be `-∞`.
    #[serde(default)]
    pub c_lower_bound: f64,
    /// Quantile of the sample minimum used by `iterated`.
    #[serde(default = "default_median_q")]
    pub median_q: f64,
}

fn default_median_q() -> f64 {
    0.5
}

impl ShiftMethod {
    pub fn new(kind: MethodKind) -> Self {
        Self {
            kind,
            estimator_cfg: EstimatorConfig::default(),
            c_lower_bound: 0.0,
            median_q: 0.5,
        }
    }

    pub fn validate(&self) -> Result<(), FitError> {
        if !(self.median_q > 0.0 && self.median_q < 1.0) {
            return Err(FitError::InvalidMethod(format!(
                "median_q = {} must be in (0, 1)",
                self.median_q
            )));
        }
        if self.c_lower_bound.is_nan() || self.c_lower_bound == f64::INFINITY {
            return Err(FitError::InvalidMethod(format!(
                "c_lower_bound = {} must be finite or -inf",
                self.c_lower_bound
            )));
        }
        self.estimator_cfg.validate()?;
        Ok(())
    }
}

impl From<MethodKind> for ShiftMethod {
    fn from(kind: MethodKind) -> Self {
        Self::new(kind)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Optimizer {
    #[default]
    Simplex,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    /// Optimizer starting points for θ.
    pub grid: Vec<ParamVector>,
    pub max_iters: usize,
    pub rel_tol: f64,
    /// Relative simplex size required on top of `rel_tol`.
    pub x_tol: f64,
    #[serde(default)]
    pub optimizer: Optimizer,
}

impl FitConfig {
    /// Defaults with the family's registry grid.
    pub fn for_family(family: &Family) -> Self {
        Self {
            grid: family.default_grid().to_vec(),
            max_iters: 2000,
            rel_tol: 1e-8,
            x_tol: 1e-8,
            optimizer: Optimizer::Simplex,
        }
    }

    pub fn validate(&self, family: &Family) -> Result<(), FitError> {
        if self.grid.is_empty() {
            return Err(FitError::InvalidConfig("grid is empty".into()));
        }
        if !(self.rel_tol > 0.0 && self.x_tol > 0.0) {
            return Err(FitError::InvalidConfig("tolerances must be positive".into()));
        }
        if self.max_iters == 0 {
            return Err(FitError::InvalidConfig("max_iters must be positive".into()));
        }
        for start in &self.grid {
            if start.len() != family.param_count() {
                return Err(FitError::InvalidConfig(format!(
                    "grid point {start} has {} values, {} expects {}",
                    start.len(),
                    family.name(),
                    family.param_count()
                )));
            }
        }
        Ok(())
    }
}

/// Outcome of a fit. `aic` is `+∞` and `converged` is false when no start
/// reached a finite, converged optimum off the penalty boundary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub family: String,
    pub method: MethodKind,
    pub theta_hat: ParamVector,
    /// The shift actually applied to the data (0 for baseline).
    pub c_hat: f64,
    pub loglik: f64,
    pub aic: f64,
    pub k_params: usize,
    pub converged: bool,
    pub n_evals: usize,
    pub starts: usize,
    pub starts_converged: usize,
    pub wall_time: f64,
}

/// Negative log-likelihood for one (method, family, sample).
#[derive(Debug, Clone)]
pub struct Objective<'a> {
    method: ShiftMethod,
    family: &'a Family,
    sample: &'a Sample,
    /// Pre-shifted data for baseline and the closed-form shifts.
    shifted: Vec<f64>,
    fixed_shift: f64,
    min_level: f64,
}

/// Builds the objective, computing a closed-form shift up front when the
/// method uses one.
pub fn build_objective<'a>(
    method: &ShiftMethod,
    family: &'a Family,
    sample: &'a Sample,
) -> Result<Objective<'a>, FitError> {
    method.validate()?;
    let required = family.param_count() + 2;
    if sample.n() < required {
        return Err(FitError::InsufficientSample {
            family: family.name().to_string(),
            params: family.param_count(),
            required,
            n: sample.n(),
        });
    }
    let fixed_shift = match method.kind.estimator() {
        Some(e) => e.estimate(sample, &method.estimator_cfg)?,
        None => 0.0,
    };
    if method.kind == MethodKind::InferC && method.c_lower_bound >= sample.min() {
        return Err(FitError::InvalidMethod(format!(
            "c_lower_bound {} is not below the sample minimum {}",
            method.c_lower_bound,
            sample.min()
        )));
    }
    let shifted = match method.kind {
        MethodKind::InferC | MethodKind::Iterated => Vec::new(),
        _ => sample.values().iter().map(|x| x - fixed_shift).collect(),
    };
    Ok(Objective {
        method: *method,
        family,
        sample,
        shifted,
        fixed_shift,
        min_level: min_quantile_level(method.median_q, sample.n()),
    })
}

fn shifted_nll(density: &crate::distributions::Density, xs: &[f64], shift: f64) -> f64 {
    -xs.iter().map(|&x| density.log_pdf(x - shift)).sum::<f64>()
}

impl Objective<'_> {
    /// Number of free coordinates: θ plus c for `infer-c`.
    pub fn dim(&self) -> usize {
        self.family.param_count() + self.method.kind.extra_params()
    }

    pub fn method(&self) -> &ShiftMethod {
        &self.method
    }

    /// The closed-form shift, when the method uses one.
    pub fn fixed_shift(&self) -> f64 {
        self.fixed_shift
    }

    /// The shift applied to the data at `params`; `None` outside the feasible set.
    pub fn shift_at(&self, params: &[f64]) -> Option<f64> {
        let k = self.family.param_count();
        match self.method.kind {
            MethodKind::InferC => {
                let c = params[k];
                (c >= self.method.c_lower_bound && c < self.sample.min()).then_some(c)
            }
            MethodKind::Iterated => {
                let d = self.family.density_if_valid(&params[..k])?;
                let q = d.quantile(self.min_level);
                (q < self.sample.min()).then_some(q)
            }
            _ => Some(self.fixed_shift),
        }
    }

    /// Negative log-likelihood; `+∞` outside the parameter box or shift constraints.
    pub fn eval(&self, params: &[f64]) -> f64 {
        let k = self.family.param_count();
        let Some(density) = self.family.density_if_valid(&params[..k]) else {
            return f64::INFINITY;
        };
        let value = match self.method.kind {
            MethodKind::InferC => {
                let c = params[k];
                if !(c >= self.method.c_lower_bound && c < self.sample.min()) {
                    return f64::INFINITY;
                }
                shifted_nll(&density, self.sample.values(), c)
            }
            MethodKind::Iterated => {
                let q = density.quantile(self.min_level);
                if q.is_nan() || q >= self.sample.min() {
                    return f64::INFINITY;
                }
                shifted_nll(&density, self.sample.values(), q)
            }
            _ => -density.log_likelihood(&self.shifted),
        };
        if value.is_nan() || value == f64::NEG_INFINITY {
            f64::INFINITY
        } else {
            value
        }
    }

    fn start_point(&self, theta: &ParamVector) -> Vec<f64> {
        let mut x = theta.as_slice().to_vec();
        if self.method.kind == MethodKind::InferC {
            // m̄ − σ̂/n, pulled inside [lower, m̄) when it falls below the bound
            let m = self.sample.min();
            let mut c0 = m - self.sample.sd() / self.sample.n() as f64;
            if c0.is_nan() || c0 >= m {
                c0 = m - f64::EPSILON * m.abs().max(1.0);
            }
            if c0 < self.method.c_lower_bound {
                c0 = 0.5 * (self.method.c_lower_bound + m);
            }
            x.push(c0);
        }
        x
    }

    /// True when `params` sits on the edge of the feasible region.
    fn on_boundary(&self, params: &[f64]) -> bool {
        const REL: f64 = 1e-6;
        let k = self.family.param_count();
        let near = |v: f64, edge: f64| (v - edge).abs() <= REL * edge.abs().max(f64::MIN_POSITIVE);
        let theta_edge = params[..k]
            .iter()
            .zip(self.family.param_box())
            .any(|(&v, (lo, hi))| near(v, lo) || near(v, hi));
        if theta_edge {
            return true;
        }
        let m = self.sample.min();
        let scale = REL * (m.abs() + self.sample.sd());
        match self.method.kind {
            MethodKind::InferC => {
                let c = params[k];
                m - c <= scale
                    || (self.method.c_lower_bound.is_finite()
                        && c - self.method.c_lower_bound <= scale)
            }
            MethodKind::Iterated => self.shift_at(params).is_none_or(|q| m - q <= scale),
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
struct StartRun {
    index: usize,
    outcome: SimplexOutcome,
    usable: bool,
}

/// Fits `family` to `sample` under `method` from every grid start.
///
/// Starts run concurrently; the winner is the lowest finite objective among
/// usable starts, ties broken by fewer evaluations and then grid order, so
/// the result does not depend on scheduling.
pub fn fit(
    method: &ShiftMethod,
    family: &Family,
    sample: &Sample,
    cfg: &FitConfig,
) -> Result<FitResult, FitError> {
    let clock = Instant::now();
    cfg.validate(family)?;
    let objective = build_objective(method, family, sample)?;
    let opts = SimplexOptions {
        max_iters: cfg.max_iters,
        rel_tol: cfg.rel_tol,
        x_tol: cfg.x_tol,
        ..SimplexOptions::default()
    };

    let runs: Vec<StartRun> = cfg
        .grid
        .par_iter()
        .enumerate()
        .map(|(index, theta)| {
            let x0 = objective.start_point(theta);
            let outcome = minimize(|x| objective.eval(x), &x0, &opts);
            let usable =
                outcome.converged && outcome.f.is_finite() && !objective.on_boundary(&outcome.x);
            StartRun {
                index,
                outcome,
                usable,
            }
        })
        .collect();

    let n_evals = runs.iter().map(|r| r.outcome.evals).sum();
    let starts_converged = runs.iter().filter(|r| r.usable).count();
    let pick = |pool: &mut dyn Iterator<Item = &StartRun>| -> Option<usize> {
        pool.min_by(|a, b| {
            a.outcome
                .f
                .total_cmp(&b.outcome.f)
                .then(a.outcome.evals.cmp(&b.outcome.evals))
                .then(a.index.cmp(&b.index))
        })
        .map(|r| r.index)
    };
    let best_usable = pick(&mut runs.iter().filter(|r| r.usable));
    let converged = best_usable.is_some();
    let chosen = best_usable
        .or_else(|| pick(&mut runs.iter().filter(|r| r.outcome.f.is_finite())))
        .unwrap_or(0);
    let run = &runs[chosen];

    let k = family.param_count();
    let theta_hat = ParamVector::new(run.outcome.x[..k].to_vec());
    let c_hat = match method.kind {
        MethodKind::Baseline => 0.0,
        _ => objective.shift_at(&run.outcome.x).unwrap_or(f64::NAN),
    };
    let loglik = if run.outcome.f.is_finite() {
        -run.outcome.f
    } else {
        f64::NEG_INFINITY
    };
    let k_params = k + method.kind.extra_params();
    let aic = if converged {
        2.0 * k_params as f64 - 2.0 * loglik
    } else {
        f64::INFINITY
    };
    Ok(FitResult {
        family: family.name().to_string(),
        method: method.kind,
        theta_hat,
        c_hat,
        loglik,
        aic,
        k_params,
        converged,
        n_evals,
        starts: runs.len(),
        starts_converged,
        wall_time: clock.elapsed().as_secs_f64(),
    })
}

/// 2k − 2ℓ̂ for a converged fit.
pub fn aic(result: &FitResult) -> Result<f64, FitError> {
    if !result.converged {
        return Err(FitError::DivergedFit);
    }
    Ok(aic_value(result.k_params, result.loglik))
}

pub fn aic_value(k_params: usize, loglik: f64) -> f64 {
    2.0 * k_params as f64 - 2.0 * loglik
}

/// Convenience for the closed-form shift of a method on a sample.
pub fn method_shift(method: &ShiftMethod, sample: &Sample) -> Result<Option<f64>, FitError> {
    Ok(match method.kind.estimator() {
        Some(e) => Some(e.estimate(sample, &method.estimator_cfg)?),
        None => None,
    })
}
