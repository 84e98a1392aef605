//! The five studies. Each expands its spec into independent cells, runs
//! them in parallel, and folds the results in cell order, so reports do not
//! depend on thread scheduling.

mod compare;
mod grid;
mod multi;
mod worstcase;

pub use compare::run_method_compare;
pub use grid::run_synthetic_grid;
pub use multi::run_multi_dataset;
pub use worstcase::{run_cauchy_worstcase, run_exp_worstcase};

use minshift_core::fitting::FitResult;

use crate::error::Result;
use crate::report::{ExperimentReport, Key, Record};
use crate::spec::{ExperimentKind, ExperimentSpec};

// Labels mixed into the master seed so studies never share child streams.
pub(crate) const TAG_SUBSAMPLE: u64 = 1;
pub(crate) const TAG_EXP: u64 = 2;
pub(crate) const TAG_CAUCHY: u64 = 3;
pub(crate) const TAG_GRID: u64 = 4;

pub fn run(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    spec.validate()?;
    match spec.kind {
        ExperimentKind::MethodCompare => run_method_compare(spec),
        ExperimentKind::MultiDataset => run_multi_dataset(spec),
        ExperimentKind::ExpWorstcase => run_exp_worstcase(spec),
        ExperimentKind::CauchyWorstcase => run_cauchy_worstcase(spec),
        ExperimentKind::SyntheticGrid => run_synthetic_grid(spec),
    }
}

/// Row records for one fit: the fit's numbers, or a single `error` row.
pub(crate) fn fit_rows(
    key: &Key,
    replication: Option<usize>,
    fit: &std::result::Result<FitResult, String>,
) -> Vec<Record> {
    match fit {
        Ok(r) => vec![
            Record::row(key, replication, "aic", r.aic),
            Record::row(key, replication, "loglik", r.loglik),
            Record::row(key, replication, "c_hat", r.c_hat),
            Record::row(key, replication, "converged", f64::from(u8::from(r.converged))),
            Record::row(key, replication, "n_evals", r.n_evals as f64),
        ],
        Err(e) => vec![Record::row(key, replication, "error", f64::NAN).with_detail(e.clone())],
    }
}
