//! Experiment harness: dataset ingestion, the five comparison studies and
//! long-format report emission.

pub mod datasets;
pub mod error;
pub mod experiments;
pub mod io;
pub mod report;
pub mod spec;
pub mod stats;

pub use error::{HarnessError, Result};
pub use experiments::run;
pub use report::{emit_report, render, ExperimentReport, Format, Record};
pub use spec::{DatasetSpec, ExperimentKind, ExperimentSpec};
