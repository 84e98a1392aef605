//! Experiment specifications, read from TOML.
//!
//! ```toml
//! kind = "method-compare"
//! seed = 42
//! replications = 5
//! sample_sizes = [20, 100, 0]      # 0 means the full dataset
//! families = ["gamma", "weibull"]
//! methods = ["baseline", "shift-c2", "infer-c"]
//!
//! [[datasets]]
//! source = "file"
//! path = "winequality-red.csv"
//! column = "alcohol"
//! ```
//!
//! Omitted lists fall back to the defaults of [`ExperimentSpec::defaults`].

use std::path::{Path, PathBuf};

use minshift_core::fitting::{FitConfig, MethodKind, ShiftMethod};
use minshift_core::{EstimatorConfig, Family, ParamVector};
use serde::{Deserialize, Serialize};

use crate::error::{HarnessError, Result};
use crate::io::Column;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    MethodCompare,
    MultiDataset,
    ExpWorstcase,
    CauchyWorstcase,
    SyntheticGrid,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::MethodCompare => "method-compare",
            ExperimentKind::MultiDataset => "multi-dataset",
            ExperimentKind::ExpWorstcase => "exp-worstcase",
            ExperimentKind::CauchyWorstcase => "cauchy-worstcase",
            ExperimentKind::SyntheticGrid => "synthetic-grid",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case", deny_unknown_fields)]
pub enum DatasetSpec {
    /// A delimited text file.
    File {
        #[serde(default)]
        name: Option<String>,
        path: PathBuf,
        #[serde(default)]
        column: Column,
    },
    /// The bundled alcohol column of the red wine quality data.
    Wine,
    /// Synthetic location-scale-varied mixtures.
    Mixtures {
        #[serde(default = "default_mixture_count")]
        count: usize,
        #[serde(default = "default_mixture_size")]
        size: usize,
    },
    /// Inline values.
    Values { name: String, values: Vec<f64> },
}

fn default_mixture_count() -> usize {
    37
}

fn default_mixture_size() -> usize {
    200
}

/// The generating distribution of the worst-case and grid studies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Truth {
    pub family: String,
    pub theta: ParamVector,
}

/// Generator axes for one family in the grid study; the grid is their
/// cartesian product.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridAxes {
    pub family: String,
    pub axes: Vec<Vec<f64>>,
}

impl GridAxes {
    pub fn points(&self) -> Vec<ParamVector> {
        let mut out: Vec<Vec<f64>> = vec![vec![]];
        for axis in &self.axes {
            out = out
                .into_iter()
                .flat_map(|p| {
                    axis.iter().map(move |&v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        out.into_iter().map(ParamVector::new).collect()
    }
}

/// Optimizer and method settings shared by every fit in an experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitSettings {
    pub max_iters: usize,
    pub rel_tol: f64,
    pub x_tol: f64,
    /// Lower end of the c interval for `infer-c`; `-inf` is allowed.
    pub c_lower_bound: f64,
    pub median_q: f64,
}

impl Default for FitSettings {
    fn default() -> Self {
        Self {
            max_iters: 2000,
            rel_tol: 1e-8,
            x_tol: 1e-8,
            c_lower_bound: 0.0,
            median_q: 0.5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: ExperimentKind,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub replications: Option<usize>,
    #[serde(default)]
    pub datasets: Vec<DatasetSpec>,
    #[serde(default)]
    pub families: Vec<String>,
    #[serde(default)]
    pub methods: Vec<String>,
    #[serde(default)]
    pub sample_sizes: Vec<usize>,
    #[serde(default)]
    pub estimator: EstimatorConfig,
    #[serde(default)]
    pub fit: FitSettings,
    #[serde(default)]
    pub truth: Option<Truth>,
    #[serde(default)]
    pub grid: Vec<GridAxes>,
}

impl ExperimentSpec {
    /// The study's standard configuration at desk scale.
    pub fn defaults(kind: ExperimentKind) -> Self {
        let strings = |xs: &[&str]| xs.iter().map(|s| s.to_string()).collect::<Vec<_>>();
        let all_methods: Vec<String> = MethodKind::ALL.iter().map(|m| m.name().to_string()).collect();
        let mut spec = Self {
            kind,
            seed: 0,
            replications: None,
            datasets: vec![],
            families: vec![],
            methods: vec![],
            sample_sizes: vec![],
            estimator: EstimatorConfig::default(),
            fit: FitSettings::default(),
            truth: None,
            grid: vec![],
        };
        match kind {
            ExperimentKind::MethodCompare => {
                spec.replications = Some(5);
                spec.datasets = vec![DatasetSpec::Wine];
                spec.families = strings(&["gamma", "weibull", "lognormal", "normal", "truncnormal"]);
                spec.methods = all_methods;
                spec.sample_sizes = vec![20, 100, 0];
            }
            ExperimentKind::MultiDataset => {
                spec.replications = Some(1);
                spec.datasets = vec![DatasetSpec::Mixtures {
                    count: default_mixture_count(),
                    size: default_mixture_size(),
                }];
                spec.families = strings(&["gamma", "weibull", "lognormal"]);
                spec.methods = all_methods;
            }
            ExperimentKind::ExpWorstcase => {
                spec.replications = Some(200);
                spec.methods = strings(&["shift-c1", "shift-c2", "shift-c3", "shift-c4"]);
                spec.sample_sizes = vec![10, 50, 100, 1000];
                spec.truth = Some(Truth {
                    family: "exponential".into(),
                    theta: [1.0 / 3.0].into(),
                });
            }
            ExperimentKind::CauchyWorstcase => {
                spec.replications = Some(200);
                spec.methods = strings(&["shift-c2", "shift-c3", "shift-c4"]);
                spec.sample_sizes = vec![10, 20, 50, 100, 200];
                spec.truth = Some(Truth {
                    family: "cauchy".into(),
                    theta: [0.0, 1.0].into(),
                });
            }
            ExperimentKind::SyntheticGrid => {
                spec.replications = Some(10);
                spec.methods = strings(&["shift-c1", "shift-c2", "shift-c3", "shift-c4"]);
                spec.sample_sizes = vec![10, 100];
                spec.grid = vec![
                    GridAxes {
                        family: "gengamma".into(),
                        axes: vec![
                            vec![0.5, 1.0, 2.0, 5.0, 10.0],
                            vec![0.5, 1.0, 2.0, 3.0, 5.0],
                            vec![0.5, 1.0, 1.5, 2.0, 3.0],
                        ],
                    },
                    GridAxes {
                        family: "expweibull".into(),
                        axes: vec![
                            vec![0.5, 1.0, 1.5, 2.0, 3.0, 5.0],
                            vec![0.5, 1.0, 2.0, 5.0, 10.0],
                            vec![0.5, 1.0, 2.0, 4.0],
                        ],
                    },
                ];
            }
        }
        spec
    }

    /// Parses TOML, filling omitted fields from [`ExperimentSpec::defaults`].
    pub fn from_toml(text: &str) -> Result<Self> {
        let raw: ExperimentSpec =
            toml::from_str(text).map_err(|e| HarnessError::Spec(e.message().to_string()))?;
        let spec = raw.with_defaults();
        spec.validate()?;
        Ok(spec)
    }

    /// Reads a spec file; relative dataset paths resolve against its directory.
    pub fn from_toml_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let mut spec = Self::from_toml(&text)?;
        let base = path.parent().unwrap_or(Path::new(""));
        for d in &mut spec.datasets {
            if let DatasetSpec::File { path, .. } = d {
                if path.is_relative() {
                    *path = base.join(&*path);
                }
            }
        }
        Ok(spec)
    }

    fn with_defaults(mut self) -> Self {
        let d = Self::defaults(self.kind);
        if self.replications.is_none() {
            self.replications = d.replications;
        }
        if self.datasets.is_empty() {
            self.datasets = d.datasets;
        }
        if self.families.is_empty() {
            self.families = d.families;
        }
        if self.methods.is_empty() {
            self.methods = d.methods;
        }
        if self.sample_sizes.is_empty() {
            self.sample_sizes = d.sample_sizes;
        }
        if self.truth.is_none() {
            self.truth = d.truth;
        }
        if self.grid.is_empty() {
            self.grid = d.grid;
        }
        self
    }

    pub fn replications(&self) -> usize {
        self.replications.unwrap_or(1)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(HarnessError::Spec(msg));
        if self.replications() == 0 {
            return bad("replications must be at least 1".into());
        }
        self.method_kinds()?;
        self.family_list()?;
        self.estimator
            .validate()
            .map_err(|e| HarnessError::Spec(e.to_string()))?;
        for m in self.method_kinds()? {
            self.shift_method(m)
                .validate()
                .map_err(|e| HarnessError::Spec(e.to_string()))?;
        }
        if !(self.fit.rel_tol > 0.0 && self.fit.x_tol > 0.0 && self.fit.max_iters > 0) {
            return bad("fit tolerances and max_iters must be positive".into());
        }
        match self.kind {
            ExperimentKind::MethodCompare | ExperimentKind::MultiDataset => {
                if self.families.is_empty() {
                    return bad("at least one family is required".into());
                }
                if self.datasets.is_empty() {
                    return bad("at least one dataset is required".into());
                }
            }
            ExperimentKind::ExpWorstcase | ExperimentKind::CauchyWorstcase | ExperimentKind::SyntheticGrid => {
                for m in self.method_kinds()? {
                    if m.estimator().is_none() {
                        return bad(format!(
                            "{} compares closed-form estimators; `{}` is not one",
                            self.kind.name(),
                            m.name()
                        ));
                    }
                    if self.kind == ExperimentKind::CauchyWorstcase && m == MethodKind::ShiftC1 {
                        return bad("shift-c1 is multiplicative and undefined on real-line data".into());
                    }
                }
                if self.sample_sizes.iter().any(|&n| n < 3) {
                    return bad("sample sizes must be at least 3".into());
                }
            }
        }
        if let Some(t) = &self.truth {
            let fam = family(&t.family)?;
            fam.validate(&t.theta)
                .map_err(|e| HarnessError::Spec(e.to_string()))?;
        }
        for g in &self.grid {
            let fam = family(&g.family)?;
            if g.axes.len() != fam.param_count() {
                return bad(format!(
                    "grid for {} has {} axes, expected {}",
                    g.family,
                    g.axes.len(),
                    fam.param_count()
                ));
            }
        }
        Ok(())
    }

    pub fn method_kinds(&self) -> Result<Vec<MethodKind>> {
        self.methods
            .iter()
            .map(|m| MethodKind::parse(m).map_err(|e| HarnessError::Spec(e.to_string())))
            .collect()
    }

    pub fn family_list(&self) -> Result<Vec<Family>> {
        self.families.iter().map(|f| family(f)).collect()
    }

    pub fn shift_method(&self, kind: MethodKind) -> ShiftMethod {
        ShiftMethod {
            kind,
            estimator_cfg: self.estimator,
            c_lower_bound: self.fit.c_lower_bound,
            median_q: self.fit.median_q,
        }
    }

    pub fn fit_config(&self, family: &Family) -> FitConfig {
        FitConfig {
            max_iters: self.fit.max_iters,
            rel_tol: self.fit.rel_tol,
            x_tol: self.fit.x_tol,
            ..FitConfig::for_family(family)
        }
    }
}

pub(crate) fn family(name: &str) -> Result<Family> {
    Family::get(name).map_err(|e| HarnessError::Spec(e.to_string()))
}
