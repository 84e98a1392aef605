//! Strategies for handling an unknown populational minimum when fitting
//! semi-infinite distribution families by maximum likelihood.
//!
//! The crate is organized bottom-up:
//!
//! * [`distributions`]: parametric families with log-densities, cdfs,
//!   quantiles and seeded samplers, plus shifted/truncated wrappers and the
//!   expected log-likelihood of a candidate model.
//! * [`estimators`]: the four closed-form low-quantile shift estimators.
//! * [`order_stats`]: the distribution of the sample minimum.
//! * [`fitting`]: the maximum-likelihood engine for all seven shift methods.

pub mod distributions;
pub mod estimators;
pub mod fitting;
pub mod order_stats;
pub mod quadrature;
pub mod rng;
pub mod sample;
pub mod special;

pub use distributions::{DistError, Family, FamilyKind, ParamVector};
pub use estimators::{EstimatorConfig, EstimatorError};
pub use fitting::{FitConfig, FitError, FitResult, MethodKind, ShiftMethod};
pub use sample::{Sample, SampleError};
