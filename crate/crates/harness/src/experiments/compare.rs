use minshift_core::fitting::{fit, FitResult};
use minshift_core::rng::{derive_seed, rng_from_seed};
use minshift_core::Sample;
use rand::seq::index;
use rayon::prelude::*;

use super::{fit_rows, TAG_SUBSAMPLE};
use crate::datasets;
use crate::error::Result;
use crate::report::{ExperimentReport, Key, Record, ALL};
use crate::spec::ExperimentSpec;
use crate::stats::quantile;

struct Trial {
    dataset: usize,
    size: usize,
    index: usize,
    sample: Sample,
}

/// Fits every (family × method) on each dataset and on seeded subsamples of
/// it, then summarizes each method's AIC by its 5% and 90% quantiles over
/// families and trials. A sample size of 0, or one at least the dataset
/// size, means the full dataset in a single trial.
pub fn run_method_compare(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    let data = datasets::load(&spec.datasets, spec.seed)?;
    let families = spec.family_list()?;
    let methods = spec.method_kinds()?;

    let mut trials = Vec::new();
    for (d, ds) in data.iter().enumerate() {
        let n = ds.sample.n();
        for &s in &spec.sample_sizes {
            if s == 0 || s >= n {
                if trials.iter().any(|t: &Trial| t.dataset == d && t.size == n) {
                    continue;
                }
                trials.push(Trial {
                    dataset: d,
                    size: n,
                    index: 0,
                    sample: ds.sample.clone(),
                });
                continue;
            }
            for t in 0..spec.replications() {
                let mut rng = rng_from_seed(derive_seed(
                    spec.seed,
                    &[TAG_SUBSAMPLE, d as u64, s as u64, t as u64],
                ));
                let mut picks = index::sample(&mut rng, n, s).into_vec();
                picks.sort_unstable();
                let values = picks.iter().map(|&i| ds.sample.values()[i]).collect();
                trials.push(Trial {
                    dataset: d,
                    size: s,
                    index: t,
                    sample: Sample::new(values)?,
                });
            }
        }
    }

    let (nf, nm) = (families.len(), methods.len());
    let cells: Vec<(usize, usize, usize)> = (0..trials.len())
        .flat_map(|t| (0..nf).flat_map(move |f| (0..nm).map(move |m| (t, f, m))))
        .collect();
    let fits: Vec<std::result::Result<FitResult, String>> = cells
        .par_iter()
        .map(|&(t, f, m)| {
            let family = &families[f];
            fit(
                &spec.shift_method(methods[m]),
                family,
                &trials[t].sample,
                &spec.fit_config(family),
            )
            .map_err(|e| e.to_string())
        })
        .collect();

    let mut records = Vec::new();
    for (&(t, f, m), r) in cells.iter().zip(&fits) {
        let trial = &trials[t];
        let key = Key::new(&data[trial.dataset].name, families[f].name(), methods[m].name(), trial.size);
        records.extend(fit_rows(&key, Some(trial.index), r));
    }

    // one summary per (dataset, size, method), across families and trials
    let mut groups: Vec<(usize, usize)> = Vec::new();
    for t in &trials {
        if !groups.contains(&(t.dataset, t.size)) {
            groups.push((t.dataset, t.size));
        }
    }
    for (d, size) in groups {
        for (m, method) in methods.iter().enumerate() {
            let in_group = cells.iter().zip(&fits).filter(|(&(t, _, mm), _)| {
                mm == m && trials[t].dataset == d && trials[t].size == size
            });
            let (mut aics, mut diverged, mut errors, mut total) = (Vec::new(), 0usize, 0usize, 0usize);
            for (_, r) in in_group {
                total += 1;
                match r {
                    Ok(r) if r.converged => aics.push(r.aic),
                    Ok(_) => diverged += 1,
                    Err(_) => errors += 1,
                }
            }
            let key = Key::new(&data[d].name, ALL, method.name(), size);
            let fitted = total - errors;
            records.push(Record::aggregate(&key, "aic_q05", quantile(&aics, 0.05)));
            records.push(Record::aggregate(&key, "aic_q90", quantile(&aics, 0.90)));
            records.push(Record::aggregate(
                &key,
                "aic_best",
                aics.iter().copied().fold(f64::INFINITY, f64::min),
            ));
            records.push(Record::aggregate(&key, "cells", total as f64));
            records.push(Record::aggregate(&key, "diverged", diverged as f64));
            records.push(Record::aggregate(&key, "errors", errors as f64));
            records.push(Record::aggregate(
                &key,
                "divergence_rate",
                if fitted == 0 { f64::NAN } else { diverged as f64 / fitted as f64 },
            ));
        }
    }

    Ok(ExperimentReport {
        kind: spec.kind,
        seed: spec.seed,
        records,
    })
}
