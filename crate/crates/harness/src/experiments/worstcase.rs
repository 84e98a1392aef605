use minshift_core::fitting::{fit, MethodKind};
use minshift_core::order_stats::{distance_report, min_quantile};
use minshift_core::rng::derive_seed;
use minshift_core::{Family, ParamVector};
use rayon::prelude::*;

use super::{TAG_CAUCHY, TAG_EXP};
use crate::error::{HarnessError, Result};
use crate::report::{ExperimentReport, Key, Record, ALL};
use crate::spec::{family, ExperimentSpec};
use crate::stats::{half_width, mean, sd, variance, Z99};

/// Exponential worst case: each estimator's shift is applied, the family is
/// refitted on the shifted sample, and the fitted log-likelihood is compared
/// with the true model's log-likelihood of the original sample. Also tracks
/// the signed distance from ĉ to the 5% quantile of the sample minimum.
pub fn run_exp_worstcase(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    estimator_study(spec, TAG_EXP, true)
}

/// Heavy-tailed case: the probability F(ĉ) of drawing below each estimate.
pub fn run_cauchy_worstcase(spec: &ExperimentSpec) -> Result<ExperimentReport> {
    estimator_study(spec, TAG_CAUCHY, false)
}

/// Distances are divided by the population mean, or by the scale parameter
/// when the mean does not exist.
pub(crate) fn normalizer(family: &Family, theta: &ParamVector) -> Result<f64> {
    if let Some(m) = family.mean(theta)? {
        return Ok(m);
    }
    family
        .param_names()
        .iter()
        .position(|p| p == "scale")
        .map(|i| theta.as_slice()[i])
        .ok_or_else(|| HarnessError::Spec(format!("{} has neither a mean nor a scale", family.name())))
}

#[derive(Default)]
struct Cell {
    c_hat: Option<f64>,
    f_at_c: f64,
    dist_q05: f64,
    dist_q01: f64,
    rel_dist_to_min: f64,
    ll_diff: Option<f64>,
    error: Option<String>,
}

fn estimator_study(spec: &ExperimentSpec, tag: u64, refit: bool) -> Result<ExperimentReport> {
    let truth = spec
        .truth
        .as_ref()
        .ok_or_else(|| HarnessError::Spec("a truth distribution is required".into()))?;
    let fam = family(&truth.family)?;
    let theta = truth.theta.clone();
    let scale = normalizer(&fam, &theta)?;
    let methods = spec.method_kinds()?;
    let reps = spec.replications();
    let label = format!("{}{}", fam.name(), theta);

    let cells: Vec<(usize, usize)> = spec
        .sample_sizes
        .iter()
        .flat_map(|&n| (0..reps).map(move |r| (n, r)))
        .collect();
    let rows: Vec<Vec<Cell>> = cells
        .par_iter()
        .map(|&(n, rep)| {
            let sample = fam.sample(&theta, n, derive_seed(spec.seed, &[tag, n as u64, rep as u64]))?;
            let true_ll = fam.log_likelihood(&theta, sample.values())?;
            Ok(methods
                .iter()
                .map(|&m| evaluate(spec, &fam, &theta, scale, &sample, true_ll, m, refit))
                .collect())
        })
        .collect::<Result<_>>()?;

    let mut records = Vec::new();
    let mut by_group: Vec<Vec<&Cell>> = vec![Vec::new(); spec.sample_sizes.len() * methods.len()];
    for (&(n, rep), row) in cells.iter().zip(&rows) {
        let si = spec.sample_sizes.iter().position(|&s| s == n).expect("size in spec");
        for (m, cell) in methods.iter().zip(row) {
            let key = Key::new(&label, fam.name(), m.name(), n);
            if let Some(e) = &cell.error {
                records.push(Record::row(&key, Some(rep), "error", f64::NAN).with_detail(e.clone()));
                continue;
            }
            let c = cell.c_hat.expect("estimate present without error");
            records.push(Record::row(&key, Some(rep), "c_hat", c));
            records.push(Record::row(&key, Some(rep), "f_at_c", cell.f_at_c));
            records.push(Record::row(&key, Some(rep), "dist_q05", cell.dist_q05));
            records.push(Record::row(&key, Some(rep), "dist_q01", cell.dist_q01));
            records.push(Record::row(&key, Some(rep), "rel_dist_to_min", cell.rel_dist_to_min));
            if refit {
                match cell.ll_diff {
                    Some(d) => records.push(Record::row(&key, Some(rep), "ll_diff", d)),
                    None => records.push(Record::row(&key, Some(rep), "diverged", 1.0)),
                }
            }
        }
        for (mi, cell) in row.iter().enumerate() {
            by_group[si * methods.len() + mi].push(cell);
        }
    }

    for (si, &n) in spec.sample_sizes.iter().enumerate() {
        let key = Key::new(&label, fam.name(), ALL, n);
        records.push(Record::aggregate(&key, "q05_target", min_quantile(&fam, &theta, n, 0.05)?));
        records.push(Record::aggregate(&key, "q01_target", min_quantile(&fam, &theta, n, 0.01)?));
        for (mi, m) in methods.iter().enumerate() {
            let key = Key::new(&label, fam.name(), m.name(), n);
            let group = &by_group[si * methods.len() + mi];
            let ok: Vec<&&Cell> = group.iter().filter(|c| c.error.is_none()).collect();
            let pick = |f: fn(&Cell) -> f64| ok.iter().map(|c| f(c)).collect::<Vec<f64>>();
            let f_at_c = pick(|c| c.f_at_c);
            let q05 = pick(|c| c.dist_q05);
            let q01 = pick(|c| c.dist_q01);
            let to_min = pick(|c| c.rel_dist_to_min);
            let finite = ok.iter().filter(|c| c.c_hat.is_some_and(f64::is_finite)).count();
            let (mf, sf) = (mean(&f_at_c), sd(&f_at_c));
            records.push(Record::aggregate(&key, "count", ok.len() as f64));
            records.push(Record::aggregate(&key, "errors", (group.len() - ok.len()) as f64));
            records.push(Record::aggregate(&key, "finite_fraction", finite as f64 / group.len() as f64));
            records.push(Record::aggregate(&key, "mean_f_at_c", mf));
            records.push(Record::aggregate(&key, "sd_f_at_c", sf));
            records.push(Record::aggregate(&key, "var_f_at_c", variance(&f_at_c)));
            records.push(Record::aggregate(&key, "band_lo_f_at_c", mf - 0.1 * sf));
            records.push(Record::aggregate(&key, "band_hi_f_at_c", mf + 0.1 * sf));
            records.push(Record::aggregate(&key, "mean_dist_q05", mean(&q05)));
            records.push(Record::aggregate(&key, "hw99_dist_q05", half_width(&q05, Z99)));
            records.push(Record::aggregate(&key, "mean_dist_q01", mean(&q01)));
            records.push(Record::aggregate(&key, "mean_rel_dist_to_min", mean(&to_min)));
            if refit {
                let ll: Vec<f64> = ok.iter().filter_map(|c| c.ll_diff).collect();
                records.push(Record::aggregate(&key, "mean_ll_diff", mean(&ll)));
                records.push(Record::aggregate(&key, "hw99_ll_diff", half_width(&ll, Z99)));
                records.push(Record::aggregate(&key, "diverged", (ok.len() - ll.len()) as f64));
            }
        }
    }

    Ok(ExperimentReport {
        kind: spec.kind,
        seed: spec.seed,
        records,
    })
}

#[allow(clippy::too_many_arguments)]
fn evaluate(
    spec: &ExperimentSpec,
    fam: &Family,
    theta: &ParamVector,
    scale: f64,
    sample: &minshift_core::Sample,
    true_ll: f64,
    method: MethodKind,
    refit: bool,
) -> Cell {
    let run = || -> std::result::Result<Cell, String> {
        let estimator = method.estimator().ok_or("not a closed-form estimator")?;
        let c = estimator
            .estimate(sample, &spec.estimator)
            .map_err(|e| e.to_string())?;
        let d = distance_report(c, fam, theta, sample.n(), sample.min(), scale).map_err(|e| e.to_string())?;
        let ll_diff = if refit {
            let shifted = sample.shifted(c).map_err(|e| e.to_string())?;
            let r = fit(
                &spec.shift_method(MethodKind::Baseline),
                fam,
                &shifted,
                &spec.fit_config(fam),
            )
            .map_err(|e| e.to_string())?;
            r.converged.then_some(r.loglik - true_ll)
        } else {
            None
        };
        Ok(Cell {
            c_hat: Some(c),
            f_at_c: d.f_at_c,
            dist_q05: d.signed_rel_dist_q05,
            dist_q01: d.signed_rel_dist_q01,
            rel_dist_to_min: d.rel_dist_to_min,
            ll_diff,
            error: None,
        })
    };
    run().unwrap_or_else(|e| Cell {
        error: Some(e),
        ..Cell::default()
    })
}
