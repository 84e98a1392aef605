use std::fmt;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use minshift_core::estimators::{all_estimates, EstimatorConfig};
use minshift_core::fitting::{fit, FitConfig, MethodKind, ShiftMethod};
use minshift_core::order_stats::min_quantile;
use minshift_core::{Family, ParamVector};
use minshift_harness::io::{load_column, Column};
use minshift_harness::report::{render, Format};
use minshift_harness::{ExperimentKind, ExperimentSpec, HarnessError};
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "minshift", version, about = "Fit semi-infinite distributions when the populational minimum is unknown")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the four closed-form shift estimates for a sample.
    Estimate {
        #[command(flatten)]
        data: DataArgs,
        /// Logarithm base of the multiplicative estimator.
        #[arg(long, default_value_t = 10.0)]
        k: f64,
        /// Tail probability of the DKW-based estimator.
        #[arg(long, default_value_t = 0.05)]
        nu: f64,
    },
    /// Print the q-quantile of the minimum of n draws.
    Minq {
        #[arg(long)]
        family: String,
        /// Comma-separated parameters, e.g. `10,80`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        theta: Vec<f64>,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        q: f64,
    },
    /// Fit one family with one method and print the result as JSON.
    Fit {
        #[command(flatten)]
        data: DataArgs,
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "baseline")]
        method: String,
        /// TOML file with grid, tolerances and method settings.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Accepted for interface symmetry; fitting is deterministic.
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// AIC comparison of all methods on real data.
    Compare(ExperimentArgs),
    /// Log-likelihood differences across many datasets.
    Multi(ExperimentArgs),
    /// Exponential worst case for the closed-form estimators.
    WorstcaseExp(ExperimentArgs),
    /// Cauchy worst case for the additive estimators.
    WorstcaseCauchy(ExperimentArgs),
    /// Distance metrics over a grid of generator distributions.
    Grid(ExperimentArgs),
}

#[derive(Args)]
struct DataArgs {
    /// CSV file with the observations.
    #[arg(long)]
    data: PathBuf,
    /// Column name or zero-based index.
    #[arg(long)]
    column: Option<String>,
}

impl DataArgs {
    fn column(&self) -> Column {
        match &self.column {
            None => Column::default(),
            Some(c) => c.parse().map_or_else(|_| Column::Name(c.clone()), Column::Index),
        }
    }
}

#[derive(Args)]
struct ExperimentArgs {
    /// TOML experiment spec; omitted fields take the study defaults.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Master seed; overrides the spec's.
    #[arg(long)]
    seed: Option<u64>,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

impl From<OutputFormat> for Format {
    fn from(f: OutputFormat) -> Self {
        match f {
            OutputFormat::Csv => Format::Csv,
            OutputFormat::Json => Format::Json,
        }
    }
}

/// Failures split by exit code: bad input (2) or filesystem trouble (3).
enum CliError {
    Input(String),
    Io(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input(m) | CliError::Io(m) => f.write_str(m),
        }
    }
}

impl From<HarnessError> for CliError {
    fn from(e: HarnessError) -> Self {
        if e.is_io() {
            CliError::Io(e.to_string())
        } else {
            CliError::Input(e.to_string())
        }
    }
}

fn input(e: impl fmt::Display) -> CliError {
    CliError::Input(e.to_string())
}

/// Settings accepted by `fit --config`.
#[derive(Debug, Default, Deserialize)]
#[serde(default, deny_unknown_fields)]
struct FitFile {
    grid: Option<Vec<ParamVector>>,
    max_iters: Option<usize>,
    rel_tol: Option<f64>,
    x_tol: Option<f64>,
    c_lower_bound: Option<f64>,
    median_q: Option<f64>,
    estimator: Option<EstimatorConfig>,
}

#[derive(Serialize)]
struct EstimateOutput {
    n: usize,
    min: f64,
    mean: f64,
    sd: f64,
    c1: Option<f64>,
    c1_negative: Option<bool>,
    c2: Option<f64>,
    c3: Option<f64>,
    c4: Option<f64>,
    errors: Vec<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                CliError::Input(_) => 2,
                CliError::Io(_) => 3,
            })
        }
    }
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::Estimate { data, k, nu } => {
            let sample = load_column(&data.data, &data.column())?;
            let cfg = EstimatorConfig { k, nu };
            cfg.validate().map_err(input)?;
            let all = all_estimates(&sample, &cfg);
            let mut errors = Vec::new();
            let mut keep = |name: &str, r: Result<f64, _>| match r {
                Ok(v) => Some(v),
                Err(e) => {
                    errors.push(format!("{name}: {e}"));
                    None
                }
            };
            let c1 = all.c1.clone().map(|e| e.value);
            let out = EstimateOutput {
                n: sample.n(),
                min: sample.min(),
                mean: sample.mean(),
                sd: sample.sd(),
                c1: keep("c1", c1),
                c1_negative: all.c1.as_ref().ok().map(|e| e.negative),
                c2: keep("c2", all.c2),
                c3: keep("c3", all.c3),
                c4: keep("c4", all.c4),
                errors,
            };
            write_stdout(&(serde_json::to_string_pretty(&out).map_err(input)? + "\n"))?;
        }
        Command::Minq { family, theta, n, q } => {
            let fam = Family::get(&family).map_err(input)?;
            let value = min_quantile(&fam, &ParamVector::new(theta), n, q).map_err(input)?;
            write_stdout(&format!("{value}\n"))?;
        }
        Command::Fit {
            data,
            family,
            method,
            config,
            seed: _,
        } => {
            let sample = load_column(&data.data, &data.column())?;
            let fam = Family::get(&family).map_err(input)?;
            let kind = MethodKind::parse(&method).map_err(input)?;
            let file = match &config {
                Some(path) => toml::from_str::<FitFile>(&read(path)?).map_err(|e| {
                    CliError::Input(format!("{}: {}", path.display(), e.message()))
                })?,
                None => FitFile::default(),
            };
            let mut method = ShiftMethod::new(kind);
            let mut cfg = FitConfig::for_family(&fam);
            if let Some(g) = file.grid {
                cfg.grid = g;
            }
            cfg.max_iters = file.max_iters.unwrap_or(cfg.max_iters);
            cfg.rel_tol = file.rel_tol.unwrap_or(cfg.rel_tol);
            cfg.x_tol = file.x_tol.unwrap_or(cfg.x_tol);
            method.c_lower_bound = file.c_lower_bound.unwrap_or(method.c_lower_bound);
            method.median_q = file.median_q.unwrap_or(method.median_q);
            method.estimator_cfg = file.estimator.unwrap_or(method.estimator_cfg);
            let result = fit(&method, &fam, &sample, &cfg).map_err(input)?;
            write_stdout(&(serde_json::to_string_pretty(&result).map_err(input)? + "\n"))?;
        }
        Command::Compare(a) => experiment(ExperimentKind::MethodCompare, a)?,
        Command::Multi(a) => experiment(ExperimentKind::MultiDataset, a)?,
        Command::WorstcaseExp(a) => experiment(ExperimentKind::ExpWorstcase, a)?,
        Command::WorstcaseCauchy(a) => experiment(ExperimentKind::CauchyWorstcase, a)?,
        Command::Grid(a) => experiment(ExperimentKind::SyntheticGrid, a)?,
    }
    Ok(())
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn experiment(kind: ExperimentKind, args: ExperimentArgs) -> Result<(), CliError> {
    let mut spec = match &args.config {
        Some(path) => {
            let spec = ExperimentSpec::from_toml_file(path)?;
            if spec.kind != kind {
                return Err(CliError::Input(format!(
                    "{} describes a {} experiment, not {}",
                    path.display(),
                    spec.kind.name(),
                    kind.name()
                )));
            }
            spec
        }
        None => ExperimentSpec::defaults(kind),
    };
    if let Some(seed) = args.seed {
        spec.seed = seed;
    }
    let report = minshift_harness::run(&spec)?;
    let text = render(&report, args.format.into())?;
    match &args.out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?,
        None => write_stdout(&text)?,
    }
    Ok(())
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
fn write_stdout(text: &str) -> Result<(), CliError> {
    use std::io::Write;
    match std::io::stdout().lock().write_all(text.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::Io(format!("stdout: {e}"))),
        _ => Ok(()),
    }
}
