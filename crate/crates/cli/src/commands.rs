use std::fmt;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::Args;

use esreal_core::document::{self, DocumentError, LedgerFinding};
use esreal_core::parksim::{compare_with_pipeline, simulate as run_simulation, events, Registry};
use esreal_core::report::{
    to_toml, BundleReport, EvaluationReport, ScalingReport, ScalingSample, SeriesReport,
    ValidationDocument,
};
use esreal_core::{
    balanced_sda_area, balanced_ssa_area, evaluate_series, evaluate_service, summarize_bundle,
    trend_labels, AreaEsModel, Error, EvaluationResult, Quantity, ServiceLedger, ServiceUnit,
    DEFAULT_EPSILON,
};

use crate::{tabular, Format, Output};

/// Failure of one command, carrying its exit code.
#[derive(Debug)]
pub enum CliError {
    Io(String),
    Parse(String),
    Domain { message: String, details: Vec<String> },
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Io(_) | CliError::Parse(_) => 1,
            CliError::Domain { .. } => 2,
            CliError::Mismatch(_) => 3,
        }
    }

    pub fn details(&self) -> &[String] {
        match self {
            CliError::Domain { details, .. } => details,
            _ => &[],
        }
    }

    fn domain(message: impl Into<String>) -> Self {
        CliError::Domain {
            message: message.into(),
            details: Vec::new(),
        }
    }

    fn findings(findings: &[LedgerFinding]) -> Self {
        CliError::Domain {
            message: format!("{} validation finding(s)", findings.len()),
            details: findings.iter().map(|f| f.to_string()).collect(),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Io(m) | CliError::Parse(m) | CliError::Mismatch(m) => f.write_str(m),
            CliError::Domain { message, .. } => f.write_str(message),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidScenario(_) | Error::UnknownTemplate(_) | Error::CorruptLog { .. } => {
                CliError::Parse(e.to_string())
            }
            Error::ValidationFailed(report) => CliError::Domain {
                message: "ledger failed validation".into(),
                details: report.findings.iter().map(|f| f.to_string()).collect(),
            },
            Error::PeriodValidationFailed { ref period, ref report } => CliError::Domain {
                message: format!("period {period} failed validation"),
                details: report.findings.iter().map(|f| f.to_string()).collect(),
            },
            other => CliError::domain(other.to_string()),
        }
    }
}

impl From<DocumentError> for CliError {
    fn from(e: DocumentError) -> Self {
        match e {
            DocumentError::Parse(m) => CliError::Parse(m),
            DocumentError::Schema(findings) => CliError::findings(&findings),
        }
    }
}

type CmdResult = Result<(), CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> CmdResult {
    fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(path) => write_file(path, text),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| CliError::Io(e.to_string())),
    }
}

fn check_epsilon(epsilon: f64) -> CmdResult {
    if epsilon.is_finite() && epsilon >= 0.0 {
        Ok(())
    } else {
        Err(CliError::domain(format!(
            "epsilon must be a non-negative number, got {epsilon}"
        )))
    }
}

/// Parsed and fully validated ledgers.
fn load_ledgers(path: &Path) -> Result<Vec<ServiceLedger>, CliError> {
    let ledgers = document::parse_ledgers(&read(path)?)?;
    let findings = document::validate_ledgers(&ledgers);
    if findings.is_empty() {
        Ok(ledgers)
    } else {
        Err(CliError::findings(&findings))
    }
}

fn evaluate_all(ledgers: &[ServiceLedger], epsilon: f64) -> Result<Vec<EvaluationResult>, CliError> {
    ledgers
        .iter()
        .map(|l| evaluate_service(l, epsilon).map_err(CliError::from))
        .collect()
}

fn ledger_count(text: &str) -> usize {
    text.parse::<toml::Table>()
        .ok()
        .and_then(|t| t.get("ledger").and_then(|v| v.as_array()).map(Vec::len))
        .unwrap_or(0)
}

pub fn validate(input: &Path, out: Option<&Path>) -> CmdResult {
    let text = read(input)?;
    let (count, findings) = match document::parse_ledgers(&text) {
        Ok(ledgers) => (ledgers.len(), document::validate_ledgers(&ledgers)),
        Err(DocumentError::Schema(findings)) => (ledger_count(&text), findings),
        Err(e) => return Err(e.into()),
    };
    emit(out, &to_toml(&ValidationDocument::new(count, &findings)))?;
    if findings.is_empty() {
        Ok(())
    } else {
        Err(CliError::findings(&findings))
    }
}

pub fn evaluate(input: &Path, epsilon: f64, output: &Output) -> CmdResult {
    check_epsilon(epsilon)?;
    let results = evaluate_all(&load_ledgers(input)?, epsilon)?;
    let report = EvaluationReport::new(&results, epsilon);
    let text = match output.format {
        Format::Structured => to_toml(&report),
        Format::Tabular => tabular::evaluation(&report),
    };
    emit(output.out.as_deref(), &text)
}

pub fn bundle(input: &Path, epsilon: f64, output: &Output) -> CmdResult {
    check_epsilon(epsilon)?;
    let results = evaluate_all(&load_ledgers(input)?, epsilon)?;
    let summary = summarize_bundle(&results, epsilon)?;
    let report = BundleReport::new(&summary, epsilon);
    let text = match output.format {
        Format::Structured => to_toml(&report),
        Format::Tabular => tabular::bundle(&report),
    };
    emit(output.out.as_deref(), &text)
}

pub fn series(input: &Path, epsilon: f64, output: &Output) -> CmdResult {
    check_epsilon(epsilon)?;
    let ledgers = document::parse_ledgers(&read(input)?)?;
    let series = evaluate_series(&ledgers, epsilon)?;
    // a single period has no trend
    let trends = match trend_labels(&series) {
        Ok(t) => Some(t),
        Err(Error::TooShort(_)) => None,
        Err(e) => return Err(e.into()),
    };
    let shifts = esreal_core::detect_regime_shifts(&series);
    let report = SeriesReport::new(&series, trends, shifts, epsilon);
    let text = match output.format {
        Format::Structured => to_toml(&report),
        Format::Tabular => tabular::results(&report.periods),
    };
    emit(output.out.as_deref(), &text)
}

#[derive(Debug, Args)]
#[command(group = clap::ArgGroup::new("area").required(true))]
pub struct ScalingArgs {
    /// Supply per unit of SSA area.
    #[arg(long, allow_negative_numbers = true)]
    pub supply_slope: f64,
    /// Demand per unit of SDA area.
    #[arg(long, allow_negative_numbers = true)]
    pub demand_slope: f64,
    /// Given SSA area; reports the SDA area that balances it.
    #[arg(long, group = "area", allow_negative_numbers = true)]
    pub ssa_area: Option<f64>,
    /// Given SDA area; reports the SSA area that balances it.
    #[arg(long, group = "area", allow_negative_numbers = true)]
    pub sda_area: Option<f64>,
    /// Number of evenly spaced sample areas, endpoints included.
    #[arg(long, default_value_t = 11)]
    pub samples: usize,
    /// Largest sampled area. Defaults to twice the larger of the given and balanced areas.
    #[arg(long)]
    pub max_area: Option<f64>,
    #[arg(long, default_value = "ha")]
    pub area_unit: String,
    #[arg(long, default_value = "units")]
    pub unit: String,
    #[command(flatten)]
    pub output: Output,
}

pub fn scaling(args: &ScalingArgs) -> CmdResult {
    let unit = ServiceUnit::new(args.unit.as_str())?;
    let model = AreaEsModel::new(args.supply_slope, args.demand_slope, &args.area_unit, unit)?;
    let (given, area, balanced) = match (args.ssa_area, args.sda_area) {
        (Some(a), _) => ("ssa", a, balanced_sda_area(&model, a)?),
        (None, Some(a)) => ("sda", a, balanced_ssa_area(&model, a)?),
        (None, None) => unreachable!("clap requires one area"),
    };
    if args.samples < 2 {
        return Err(CliError::domain("--samples must be at least 2"));
    }
    let max_area = match args.max_area {
        Some(m) if m.is_finite() && m > 0.0 => m,
        Some(m) => return Err(CliError::domain(format!("--max-area must be positive, got {m}"))),
        None => match 2.0 * area.max(balanced) {
            m if m > 0.0 => m,
            _ => 1.0,
        },
    };
    let last = (args.samples - 1) as f64;
    let samples = (0..args.samples)
        .map(|i| {
            let a = max_area * i as f64 / last;
            ScalingSample {
                area: a,
                supply: model.supply_slope() * a,
                demand: model.demand_slope() * a,
            }
        })
        .collect();
    let report = ScalingReport::new(&model, given, area, balanced, samples);
    let text = match args.output.format {
        Format::Structured => to_toml(&report),
        Format::Tabular => tabular::scaling(&report),
    };
    emit(args.output.out.as_deref(), &text)
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Scenario document.
    pub scenario: PathBuf,
    /// Overrides the scenario's seed.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Write the generated ledger document here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write the event log (one JSON object per line) here.
    #[arg(long)]
    pub events: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_EPSILON, allow_negative_numbers = true)]
    pub epsilon: f64,
    /// Perturbs the ledger before comparison; exercises the mismatch path.
    #[arg(long, hide = true)]
    pub inject_mismatch: bool,
}

pub fn simulate(args: &SimulateArgs) -> CmdResult {
    check_epsilon(args.epsilon)?;
    let mut scenario = document::parse_scenario(&read(&args.scenario)?, &Registry::builtin())?;
    if let Some(seed) = args.seed {
        scenario.seed = seed;
    }
    let outcome = run_simulation(&scenario)?;
    let mut ledger = outcome.ledger.clone();
    if args.inject_mismatch {
        // raising both potentials by more than the realized count moves
        // pipeline use away from the observed value
        let bump = outcome.observed_actual_use.value() + 1.0;
        let raise = |q: &Quantity| Quantity::new(q.value() + bump, q.unit().clone());
        ledger.supply.potential = raise(&ledger.supply.potential)?;
        ledger.demand.potential = raise(&ledger.demand.potential)?;
    }

    if let Some(path) = &args.events {
        let mut buf = Vec::new();
        events::write_jsonl(&outcome.events, &mut buf)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        fs::write(path, buf).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
    }
    emit(
        args.out.as_deref(),
        &document::serialize_ledgers(std::slice::from_ref(&ledger)),
    )?;

    let cmp = compare_with_pipeline(&outcome.observed_actual_use, &ledger, args.epsilon)?;
    eprintln!("{cmp}");
    if cmp.matches() {
        Ok(())
    } else {
        Err(CliError::Mismatch(format!("simulation disagrees with pipeline: {cmp}")))
    }
}
