//! Machine-readable reports.
//!
//! Ratios carry their full-precision value next to a two-decimal display
//! string; undefined ratios are written as the string `"undefined"` in both.

use serde::{Serialize, Serializer};

use crate::accounting::EvaluationResult;
use crate::bundles::BundleSummary;
use crate::display::format_ratio;
use crate::document::LedgerFinding;
use crate::scaling::{AreaEsModel, ScalingScenario};
use crate::temporal::{EvaluationSeries, RegimeShift, TrendLabels};

pub const UNDEFINED: &str = "undefined";

/// A ratio that may be undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ratio(pub Option<f64>);

impl Ratio {
    pub fn display(&self) -> String {
        self.0.map(format_ratio).unwrap_or_else(|| UNDEFINED.into())
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0 {
            Some(v) => s.serialize_f64(v),
            None => s.serialize_str(UNDEFINED),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SupplyStages {
    pub potential: f64,
    pub max_actual_ssa: f64,
    pub actual_ssa: f64,
    pub actual: f64,
    pub available_actual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DemandStages {
    pub potential: f64,
    pub max_actual_sda: f64,
    pub actual_sda: f64,
    pub actual: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IndicesEntry {
    pub scr: Ratio,
    pub scr_display: String,
    pub dsr: Ratio,
    pub dsr_display: String,
    pub sdb: Ratio,
    pub sdb_display: String,
    pub local_supply_reliance: Ratio,
    pub local_supply_reliance_display: String,
    pub local_demand_reliance: Ratio,
    pub local_demand_reliance_display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultEntry {
    pub service_name: String,
    pub period: String,
    pub unit: String,
    pub actual_use: f64,
    pub realization: String,
    pub realization_label: String,
    pub supply: SupplyStages,
    pub demand: DemandStages,
    pub indices: IndicesEntry,
}

impl From<&EvaluationResult> for ResultEntry {
    fn from(r: &EvaluationResult) -> Self {
        let ix = &r.indices;
        let ratio = |v: Option<f64>| {
            let ratio = Ratio(v);
            (ratio, ratio.display())
        };
        let (scr, scr_display) = ratio(ix.scr);
        let (dsr, dsr_display) = ratio(ix.dsr);
        let (sdb, sdb_display) = ratio(ix.sdb);
        let (lsr, lsr_display) = ratio(ix.local_supply_reliance);
        let (ldr, ldr_display) = ratio(ix.local_demand_reliance);
        Self {
            service_name: r.ledger.service_name.clone(),
            period: r.ledger.period.clone(),
            unit: r.ledger.unit.to_string(),
            actual_use: r.actual_use.value(),
            realization: r.realization.key().into(),
            realization_label: r.realization.label().into(),
            supply: SupplyStages {
                potential: r.supply.potential.value(),
                max_actual_ssa: r.supply.max_actual_ssa.value(),
                actual_ssa: r.supply.actual_ssa.value(),
                actual: r.supply.actual.value(),
                available_actual: r.supply.available_actual.value(),
            },
            demand: DemandStages {
                potential: r.demand.potential.value(),
                max_actual_sda: r.demand.max_actual_sda.value(),
                actual_sda: r.demand.actual_sda.value(),
                actual: r.demand.actual.value(),
            },
            indices: IndicesEntry {
                scr,
                scr_display,
                dsr,
                dsr_display,
                sdb,
                sdb_display,
                local_supply_reliance: lsr,
                local_supply_reliance_display: lsr_display,
                local_demand_reliance: ldr,
                local_demand_reliance_display: ldr_display,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub epsilon: f64,
    pub result: Vec<ResultEntry>,
}

impl EvaluationReport {
    pub fn new(results: &[EvaluationResult], epsilon: f64) -> Self {
        Self {
            epsilon,
            result: results.iter().map(ResultEntry::from).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleRowEntry {
    pub service_name: String,
    pub scr: f64,
    pub scr_display: String,
    pub dsr: f64,
    pub dsr_display: String,
    pub sdb: f64,
    pub sdb_display: String,
    pub realization: String,
    pub realization_label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Averages {
    pub scr: f64,
    pub scr_display: String,
    pub dsr: f64,
    pub dsr_display: String,
    pub sdb: f64,
    pub sdb_display: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BundleReport {
    pub epsilon: f64,
    pub richness: usize,
    pub tendency: String,
    pub tendency_label: String,
    pub excluded: Vec<String>,
    pub averages: Averages,
    pub groups: std::collections::BTreeMap<String, Vec<String>>,
    pub rows: Vec<BundleRowEntry>,
}

impl BundleReport {
    pub fn new(summary: &BundleSummary, epsilon: f64) -> Self {
        let tendency = serde_json::to_value(summary.tendency)
            .ok()
            .and_then(|v| v.as_str().map(str::to_string))
            .unwrap_or_default();
        Self {
            epsilon,
            richness: summary.richness,
            tendency,
            tendency_label: summary.tendency.label().into(),
            excluded: summary.excluded.clone(),
            averages: Averages {
                scr: summary.mean_scr,
                scr_display: format_ratio(summary.mean_scr),
                dsr: summary.mean_dsr,
                dsr_display: format_ratio(summary.mean_dsr),
                sdb: summary.mean_sdb,
                sdb_display: format_ratio(summary.mean_sdb),
            },
            groups: summary
                .groups
                .iter()
                .map(|(k, v)| (k.key().to_string(), v.clone()))
                .collect(),
            rows: summary
                .rows
                .iter()
                .map(|r| BundleRowEntry {
                    service_name: r.service_name.clone(),
                    scr: r.scr,
                    scr_display: format_ratio(r.scr),
                    dsr: r.dsr,
                    dsr_display: format_ratio(r.dsr),
                    sdb: r.sdb,
                    sdb_display: format_ratio(r.sdb),
                    realization: r.realization.key().into(),
                    realization_label: r.realization.label().into(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeriesReport {
    pub epsilon: f64,
    pub service_name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trends: Option<TrendLabels>,
    pub shifts: Vec<RegimeShift>,
    pub periods: Vec<ResultEntry>,
}

impl SeriesReport {
    pub fn new(
        series: &EvaluationSeries,
        trends: Option<TrendLabels>,
        shifts: Vec<RegimeShift>,
        epsilon: f64,
    ) -> Self {
        Self {
            epsilon,
            service_name: series.service_name.clone(),
            trends,
            shifts,
            periods: series.entries.iter().map(|(_, r)| r.into()).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingSample {
    pub area: f64,
    pub supply: f64,
    pub demand: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub supply_slope: f64,
    pub demand_slope: f64,
    pub area_unit: String,
    pub unit: String,
    /// `"ssa"` when the input area is an SSA, `"sda"` otherwise.
    pub given: String,
    pub given_area: f64,
    pub balanced_area: f64,
    /// Actual supply (and demand) at the balance point.
    pub balanced_quantity: f64,
    pub scenario: ScalingScenario,
    pub scenario_description: String,
    pub samples: Vec<ScalingSample>,
}

impl ScalingReport {
    pub fn new(
        model: &AreaEsModel,
        given: &str,
        given_area: f64,
        balanced_area: f64,
        samples: Vec<ScalingSample>,
    ) -> Self {
        let scenario = crate::scaling::classify_scenario(model);
        let balanced_quantity = if given == "ssa" {
            model.supply_slope() * given_area
        } else {
            model.demand_slope() * given_area
        };
        Self {
            supply_slope: model.supply_slope(),
            demand_slope: model.demand_slope(),
            area_unit: model.area_unit().into(),
            unit: model.unit().to_string(),
            given: given.into(),
            given_area,
            balanced_area,
            balanced_quantity,
            scenario,
            scenario_description: scenario.description().into(),
            samples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FindingEntry {
    pub path: String,
    pub kind: String,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationDocument {
    pub ledgers: usize,
    pub valid: bool,
    pub finding: Vec<FindingEntry>,
}

impl ValidationDocument {
    pub fn new(ledgers: usize, findings: &[LedgerFinding]) -> Self {
        Self {
            ledgers,
            valid: findings.is_empty(),
            finding: findings
                .iter()
                .map(|f| FindingEntry {
                    path: f.path(),
                    kind: f.finding.kind().into(),
                    message: f.to_string(),
                })
                .collect(),
        }
    }
}

pub fn to_toml<T: Serialize>(report: &T) -> String {
    toml::to_string(report).expect("reports always serialize")
}
