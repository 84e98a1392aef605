use std::collections::BTreeMap;

use minshift_core::fitting::{fit, FitConfig, MethodKind, ShiftMethod};
use minshift_core::{Family, Sample};
use minshift_harness::report::{parse_rows, render, Format, Level};
use minshift_harness::spec::GridAxes;
use minshift_harness::{run, DatasetSpec, ExperimentKind, ExperimentSpec};

fn small_exp(reps: usize) -> ExperimentSpec {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::ExpWorstcase);
    spec.seed = 17;
    spec.replications = Some(reps);
    spec.sample_sizes = vec![50];
    spec
}

fn values(name: &str, seed: u64) -> DatasetSpec {
    let g = Family::get("gamma").unwrap();
    let s = g.sample(&[3.0, 2.0].into(), 60, seed).unwrap().shifted(-25.0).unwrap();
    DatasetSpec::Values {
        name: name.into(),
        values: s.into_values(),
    }
}

#[test]
fn reruns_are_byte_identical() {
    let spec = small_exp(20);
    let a = render(&run(&spec).unwrap(), Format::Csv).unwrap();
    let b = render(&run(&spec).unwrap(), Format::Csv).unwrap();
    assert_eq!(a, b);
}

#[test]
fn thread_count_does_not_change_output() {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::MethodCompare);
    spec.seed = 3;
    spec.replications = Some(2);
    spec.sample_sizes = vec![30];
    spec.families = vec!["gamma".into(), "lognormal".into()];
    let reference = render(&run(&spec).unwrap(), Format::Csv).unwrap();
    for threads in [1, 3] {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        let out = pool.install(|| render(&run(&spec).unwrap(), Format::Csv).unwrap());
        assert_eq!(out, reference, "{threads} threads");
    }
}

#[test]
fn seed_changes_output() {
    let a = render(&run(&small_exp(10)).unwrap(), Format::Csv).unwrap();
    let mut spec = small_exp(10);
    spec.seed = 18;
    let b = render(&run(&spec).unwrap(), Format::Csv).unwrap();
    assert_ne!(a, b);
}

#[test]
fn csv_and_json_carry_the_same_rows() {
    let report = run(&small_exp(5)).unwrap();
    let key = |r: &minshift_harness::report::OutputRow| {
        format!(
            "{:?}|{}|{}|{}|{}|{:?}|{}|{}|{}",
            r.level, r.dataset, r.family, r.method, r.sample_size, r.replication, r.metric, r.value, r.detail
        )
    };
    let mut csv: Vec<String> = parse_rows(&render(&report, Format::Csv).unwrap(), Format::Csv)
        .unwrap()
        .iter()
        .map(key)
        .collect();
    let mut json: Vec<String> = parse_rows(&render(&report, Format::Json).unwrap(), Format::Json)
        .unwrap()
        .iter()
        .map(key)
        .collect();
    csv.sort();
    json.sort();
    assert_eq!(csv.len(), report.records.len());
    assert_eq!(csv, json);
}

#[test]
fn multi_with_identical_datasets_scores_them_identically() {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::MultiDataset);
    spec.datasets = vec![values("a", 5), values("b", 5)];
    let report = run(&spec).unwrap();
    let mut by_dataset: BTreeMap<String, Vec<(String, String)>> = BTreeMap::new();
    for r in report.rows().filter(|r| r.metric == "ll_diff") {
        by_dataset
            .entry(r.dataset.clone())
            .or_default()
            .push((r.method.clone(), format!("{}", r.value)));
    }
    assert_eq!(by_dataset.len(), 2);
    assert_eq!(by_dataset["a"], by_dataset["b"]);
}

#[test]
fn best_method_on_each_dataset_scores_zero() {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::MultiDataset);
    spec.datasets = vec![values("a", 1), values("b", 2), values("c", 3)];
    let report = run(&spec).unwrap();
    for d in ["a", "b", "c"] {
        let diffs: Vec<f64> = report
            .rows()
            .filter(|r| r.dataset == d && r.metric == "ll_diff")
            .map(|r| r.value)
            .collect();
        assert!(!diffs.is_empty());
        assert!(diffs.iter().all(|&v| v <= 0.0));
        assert_eq!(diffs.iter().copied().fold(f64::NEG_INFINITY, f64::max), 0.0);
    }
}

#[test]
fn multi_rejects_a_single_dataset() {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::MultiDataset);
    spec.datasets = vec![values("a", 1)];
    assert!(run(&spec).is_err());
}

#[test]
fn half_width_shrinks_with_replications() {
    let small = run(&small_exp(50)).unwrap();
    let large = run(&small_exp(200)).unwrap();
    for m in ["shift-c1", "shift-c2", "shift-c3", "shift-c4"] {
        let a = small.aggregate(m, 50, "hw99_dist_q05").unwrap();
        let b = large.aggregate(m, 50, "hw99_dist_q05").unwrap();
        let ratio = b / a;
        assert!((ratio - 0.5).abs() <= 0.3 * 0.5, "{m}: {a} -> {b}");
    }
}

#[test]
fn single_cell_compare_aggregate_is_its_aic() {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::MethodCompare);
    spec.datasets = vec![values("one", 9)];
    spec.families = vec!["gamma".into()];
    spec.methods = vec!["shift-c2".into()];
    spec.sample_sizes = vec![0];
    let report = run(&spec).unwrap();

    let DatasetSpec::Values { values, .. } = &spec.datasets[0] else {
        unreachable!()
    };
    let g = Family::get("gamma").unwrap();
    let sample = Sample::new(values.clone()).unwrap();
    let direct = fit(
        &ShiftMethod::new(MethodKind::ShiftC2),
        &g,
        &sample,
        &FitConfig::for_family(&g),
    )
    .unwrap();
    assert!(direct.converged);
    for metric in ["aic_q05", "aic_q90", "aic_best"] {
        assert_eq!(report.aggregate("shift-c2", 60, metric), Some(direct.aic), "{metric}");
    }
    assert_eq!(report.aggregate("shift-c2", 60, "cells"), Some(1.0));
}

#[test]
fn one_point_grid_runs() {
    let mut spec = ExperimentSpec::defaults(ExperimentKind::SyntheticGrid);
    spec.replications = Some(3);
    spec.sample_sizes = vec![10];
    spec.grid = vec![GridAxes {
        family: "gengamma".into(),
        axes: vec![vec![2.0], vec![1.0], vec![1.5]],
    }];
    let report = run(&spec).unwrap();
    assert_eq!(report.aggregate("*", 0, "points_total"), Some(1.0));
    assert_eq!(report.aggregate("*", 0, "points_surviving"), Some(1.0));
    assert_eq!(report.aggregate("shift-c2", 10, "count"), Some(3.0));
    let rows = report.records.iter().filter(|r| r.level == Level::Row).count();
    assert!(rows > 0);
}

#[test]
fn empty_report_renders_header_only() {
    let mut report = run(&small_exp(2)).unwrap();
    report.records.clear();
    let csv = render(&report, Format::Csv).unwrap();
    assert_eq!(csv.lines().count(), 1);
}
