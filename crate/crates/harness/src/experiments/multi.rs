use minshift_core::fitting::{fit, FitResult};
use rayon::prelude::*;

use super::fit_rows;
use crate::datasets;
use crate::error::{HarnessError, Result};
use crate::report::{ExperimentReport, Key, Record, ALL};
use crate::spec::ExperimentSpec;
use crate::stats::{mean, quantile};

/// Scores each method on each dataset by `ℓ̂ − ℓ̂_b`, where ℓ̂ is the
/// method's best log-likelihood over the candidate families and ℓ̂_b the
/// best over all methods on that dataset. A method whose fits all diverge on
/// a dataset gets no score there and is counted in `divergence_rate`.
pub fn run_multi_dataset(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    let data = datasets::load(&spec.datasets, spec.seed)?;
    if data.len() < 2 {
        return Err(HarnessError::Spec(format!(
            "multi-dataset needs at least 2 datasets, got {}",
            data.len()
        )));
    }
    let families = spec.family_list()?;
    let methods = spec.method_kinds()?;

    let (nf, nm) = (families.len(), methods.len());
    let cells: Vec<(usize, usize, usize)> = (0..data.len())
        .flat_map(|d| (0..nm).flat_map(move |m| (0..nf).map(move |f| (d, m, f))))
        .collect();
    let fits: Vec<std::result::Result<FitResult, String>> = cells
        .par_iter()
        .map(|&(d, m, f)| {
            let family = &families[f];
            fit(&spec.shift_method(methods[m]), family, &data[d].sample, &spec.fit_config(family))
                .map_err(|e| e.to_string())
        })
        .collect();

    let mut records = Vec::new();
    for (&(d, m, f), r) in cells.iter().zip(&fits) {
        let ds = &data[d];
        let key = Key::new(&ds.name, families[f].name(), methods[m].name(), ds.sample.n());
        records.extend(fit_rows(&key, None, r));
    }

    // best[d][m] = (loglik, family) over converged fits
    let mut best: Vec<Vec<Option<(f64, usize)>>> = vec![vec![None; methods.len()]; data.len()];
    for (&(d, m, f), r) in cells.iter().zip(&fits) {
        if let Ok(r) = r {
            if r.converged && best[d][m].is_none_or(|(ll, _)| r.loglik > ll) {
                best[d][m] = Some((r.loglik, f));
            }
        }
    }

    let mut diffs: Vec<Vec<f64>> = vec![Vec::new(); methods.len()];
    for (d, ds) in data.iter().enumerate() {
        let top = best[d]
            .iter()
            .flatten()
            .map(|&(ll, _)| ll)
            .fold(f64::NEG_INFINITY, f64::max);
        for (m, method) in methods.iter().enumerate() {
            if let Some((ll, f)) = best[d][m] {
                let key = Key::new(&ds.name, families[f].name(), method.name(), ds.sample.n());
                records.push(Record::row(&key, None, "loglik_best", ll));
                records.push(Record::row(&key, None, "ll_diff", ll - top));
                diffs[m].push(ll - top);
            }
        }
    }

    for (m, method) in methods.iter().enumerate() {
        let key = Key::new(ALL, ALL, method.name(), 0);
        let (mut diverged, mut fitted) = (0usize, 0usize);
        for (_, r) in cells.iter().zip(&fits).filter(|(c, _)| c.1 == m) {
            if let Ok(r) = r {
                fitted += 1;
                diverged += usize::from(!r.converged);
            }
        }
        let v = &diffs[m];
        records.push(Record::aggregate(&key, "ll_diff_median", quantile(v, 0.5)));
        records.push(Record::aggregate(&key, "ll_diff_q25", quantile(v, 0.25)));
        records.push(Record::aggregate(&key, "ll_diff_q75", quantile(v, 0.75)));
        records.push(Record::aggregate(&key, "ll_diff_mean", mean(v)));
        records.push(Record::aggregate(
            &key,
            "ll_diff_min",
            v.iter().copied().fold(f64::INFINITY, f64::min),
        ));
        records.push(Record::aggregate(&key, "datasets_scored", v.len() as f64));
        records.push(Record::aggregate(
            &key,
            "divergence_rate",
            if fitted == 0 { f64::NAN } else { diverged as f64 / fitted as f64 },
        ));
    }

    Ok(ExperimentReport {
        kind: spec.kind,
        seed: spec.seed,
        records,
    })
}
