//! Long-format experiment reports and their CSV/JSON emission.
//!
//! Every report is a flat list of records with the columns
//! `level, dataset, family, method, sample_size, replication, metric, value, detail`.
//! `level` is `row` for a single fit or replicate and `aggregate` for a
//! summary over rows; `*` marks a column an aggregate runs across.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::spec::ExperimentKind;

pub const ALL: &str = "*";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Row,
    Aggregate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub level: Level,
    pub dataset: String,
    pub family: String,
    pub method: String,
    pub sample_size: usize,
    pub replication: Option<usize>,
    pub metric: String,
    pub value: f64,
    pub detail: String,
}

impl Record {
    pub fn row(key: &Key, replication: Option<usize>, metric: &str, value: f64) -> Self {
        Self::new(Level::Row, key, replication, metric, value)
    }

    pub fn aggregate(key: &Key, metric: &str, value: f64) -> Self {
        Self::new(Level::Aggregate, key, None, metric, value)
    }

    fn new(level: Level, key: &Key, replication: Option<usize>, metric: &str, value: f64) -> Self {
        Self {
            level,
            dataset: key.dataset.clone(),
            family: key.family.clone(),
            method: key.method.clone(),
            sample_size: key.sample_size,
            replication,
            metric: metric.to_string(),
            value,
            detail: String::new(),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

/// The identifying columns shared by a group of records.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Key {
    pub dataset: String,
    pub family: String,
    pub method: String,
    pub sample_size: usize,
}

impl Key {
    pub fn new(dataset: &str, family: &str, method: &str, sample_size: usize) -> Self {
        Self {
            dataset: dataset.to_string(),
            family: family.to_string(),
            method: method.to_string(),
            sample_size,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentReport {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub records: Vec<Record>,
}

impl ExperimentReport {
    pub fn rows(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.level == Level::Row)
    }

    pub fn aggregates(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| r.level == Level::Aggregate)
    }

    /// The first aggregate matching `method`, `sample_size` and `metric`.
    pub fn aggregate(&self, method: &str, sample_size: usize, metric: &str) -> Option<f64> {
        self.aggregates()
            .find(|r| r.method == method && r.sample_size == sample_size && r.metric == metric)
            .map(|r| r.value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

/// Shortest round-trip text for `v`; exponent notation outside `[1e-5, 1e16)`.
pub fn format_value(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 { "inf" } else { "-inf" }.into()
    } else if v == 0.0 || (1e-5..1e16).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

/// A record as written to disk, with the value already formatted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OutputRow {
    pub level: Level,
    pub dataset: String,
    pub family: String,
    pub method: String,
    pub sample_size: usize,
    pub replication: Option<usize>,
    pub metric: String,
    pub value: String,
    pub detail: String,
}

impl From<&Record> for OutputRow {
    fn from(r: &Record) -> Self {
        Self {
            level: r.level,
            dataset: r.dataset.clone(),
            family: r.family.clone(),
            method: r.method.clone(),
            sample_size: r.sample_size,
            replication: r.replication,
            metric: r.metric.clone(),
            value: format_value(r.value),
            detail: r.detail.clone(),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct JsonReport {
    kind: ExperimentKind,
    seed: u64,
    rows: Vec<OutputRow>,
}

pub const CSV_HEADER: &str =
    "level,dataset,family,method,sample_size,replication,metric,value,detail";

/// Renders the report; identical reports always render to identical text.
pub fn render(report: &ExperimentReport, format: Format) -> Result<String> {
    let rows: Vec<OutputRow> = report.records.iter().map(OutputRow::from).collect();
    match format {
        Format::Csv => {
            let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
            let mut out = format!("{CSV_HEADER}\n");
            for row in &rows {
                w.serialize(row)
                    .map_err(|e| HarnessError::Serialize(e.to_string()))?;
            }
            let body = w
                .into_inner()
                .map_err(|e| HarnessError::Serialize(e.to_string()))?;
            out.push_str(&String::from_utf8(body).expect("csv output is utf-8"));
            Ok(out)
        }
        Format::Json => {
            let doc = JsonReport {
                kind: report.kind,
                seed: report.seed,
                rows,
            };
            let mut text = serde_json::to_string_pretty(&doc)
                .map_err(|e| HarnessError::Serialize(e.to_string()))?;
            text.push('\n');
            Ok(text)
        }
    }
}

pub fn emit_report(report: &ExperimentReport, format: Format, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let text = render(report, format)?;
    fs::write(path, text).map_err(|e| HarnessError::io(path, e))
}

/// Parses rendered output back into rows, for round-trip checks.
pub fn parse_rows(text: &str, format: Format) -> Result<Vec<OutputRow>> {
    match format {
        Format::Csv => csv::Reader::from_reader(text.as_bytes())
            .deserialize()
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| HarnessError::Serialize(e.to_string())),
        Format::Json => serde_json::from_str::<JsonReport>(text)
            .map(|d| d.rows)
            .map_err(|e| HarnessError::Serialize(e.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_report() -> ExperimentReport {
        let key = Key::new("wine", "gamma", "baseline", 1599);
        ExperimentReport {
            kind: ExperimentKind::MethodCompare,
            seed: 7,
            records: vec![
                Record::row(&key, Some(0), "aic", 4658.25),
                Record::row(&key, Some(0), "loglik", f64::NEG_INFINITY),
                Record::row(&key, Some(1), "error", f64::NAN).with_detail("bad, \"quoted\""),
                Record::aggregate(&Key::new("wine", ALL, "baseline", 1599), "aic_q05", 1.5e-9),
            ],
        }
    }

    #[test]
    fn value_formatting() {
        assert_eq!(format_value(0.1), "0.1");
        assert_eq!(format_value(1e-7), "1e-7");
        assert_eq!(format_value(-2.5e20), "-2.5e20");
        assert_eq!(format_value(f64::INFINITY), "inf");
        assert_eq!(format_value(0.0), "0");
        assert_eq!(format_value(4658.0), "4658");
    }

    #[test]
    fn empty_report_is_header_only() {
        let r = ExperimentReport {
            kind: ExperimentKind::MethodCompare,
            seed: 0,
            records: vec![],
        };
        assert_eq!(render(&r, Format::Csv).unwrap(), format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn csv_and_json_hold_the_same_rows() {
        let r = sample_report();
        let mut a = parse_rows(&render(&r, Format::Csv).unwrap(), Format::Csv).unwrap();
        let mut b = parse_rows(&render(&r, Format::Json).unwrap(), Format::Json).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
        assert_eq!(a.len(), 4);
    }

    #[test]
    fn rendering_is_stable() {
        let r = sample_report();
        assert_eq!(render(&r, Format::Csv).unwrap(), render(&r.clone(), Format::Csv).unwrap());
    }
}
