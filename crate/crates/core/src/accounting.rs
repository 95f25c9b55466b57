//! Supply, demand, flow and use pipeline.
//!
//! Supply moves through five stages (potential, max actual SSA, actual SSA,
//! actual, available actual) and demand through four (potential, max actual
//! SDA, actual SDA, actual). Actual use is the smaller of available actual
//! supply and actual demand; the consumption, satisfaction and balance
//! indices and the realization type follow from it.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::{validate_ledger, Finding, LedgerField, ServiceFlowProfile, Stage};
use crate::quantities::{Quantity, RegionRef, ServiceUnit};

/// Default tolerance on the balance index for the balanced type.
pub const DEFAULT_EPSILON: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct SupplyLedgerSide {
    pub potential: Quantity,
    /// Inactive supply.
    pub adjustment: Quantity,
    pub export_flow: Quantity,
    pub import_flow: Quantity,
    /// Net loss during the supply-to-demand flow.
    pub flow_loss: Quantity,
}

impl SupplyLedgerSide {
    /// `[potential, adjustment, export_flow, import_flow, flow_loss]`
    pub fn from_values(unit: &ServiceUnit, v: [f64; 5]) -> Result<Self> {
        let q = |x: f64| Quantity::new(x, unit.clone());
        Ok(Self {
            potential: q(v[0])?,
            adjustment: q(v[1])?,
            export_flow: q(v[2])?,
            import_flow: q(v[3])?,
            flow_loss: q(v[4])?,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemandLedgerSide {
    pub potential: Quantity,
    /// Inactive demand.
    pub adjustment: Quantity,
    pub export_flow: Quantity,
    pub import_flow: Quantity,
}

impl DemandLedgerSide {
    /// `[potential, adjustment, export_flow, import_flow]`
    pub fn from_values(unit: &ServiceUnit, v: [f64; 4]) -> Result<Self> {
        let q = |x: f64| Quantity::new(x, unit.clone());
        Ok(Self {
            potential: q(v[0])?,
            adjustment: q(v[1])?,
            export_flow: q(v[2])?,
            import_flow: q(v[3])?,
        })
    }
}

/// All measured inputs for one service in one evaluation period.
#[derive(Debug, Clone, PartialEq)]
pub struct ServiceLedger {
    pub service_name: String,
    pub unit: ServiceUnit,
    pub period: String,
    pub ssa: RegionRef,
    pub sda: RegionRef,
    /// Informational only; never enters the arithmetic.
    pub overlap_flag: bool,
    pub profile: ServiceFlowProfile,
    pub supply: SupplyLedgerSide,
    pub demand: DemandLedgerSide,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupplyBreakdown {
    pub potential: Quantity,
    pub max_actual_ssa: Quantity,
    pub actual_ssa: Quantity,
    pub actual: Quantity,
    pub available_actual: Quantity,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DemandBreakdown {
    pub potential: Quantity,
    pub max_actual_sda: Quantity,
    pub actual_sda: Quantity,
    pub actual: Quantity,
}

/// Ratios derived from actual use. `None` marks a zero denominator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Indices {
    pub scr: Option<f64>,
    pub dsr: Option<f64>,
    pub sdb: Option<f64>,
    pub local_supply_reliance: Option<f64>,
    pub local_demand_reliance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RealizationType {
    SupplyLimited,
    DemandLimited,
    Balanced,
    Undefined,
}

impl RealizationType {
    pub fn key(self) -> &'static str {
        match self {
            RealizationType::SupplyLimited => "supply_limited",
            RealizationType::DemandLimited => "demand_limited",
            RealizationType::Balanced => "balanced",
            RealizationType::Undefined => "undefined",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            RealizationType::SupplyLimited => "Supply-limited",
            RealizationType::DemandLimited => "Demand-limited",
            RealizationType::Balanced => "S-D Balanced",
            RealizationType::Undefined => "Undefined",
        }
    }
}

impl fmt::Display for RealizationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationResult {
    pub ledger: ServiceLedger,
    pub supply: SupplyBreakdown,
    pub demand: DemandBreakdown,
    pub actual_use: Quantity,
    pub indices: Indices,
    pub realization: RealizationType,
}

/// A stage deduction or addition that could not be carried out.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct StageFailure {
    source: Stage,
    field: LedgerField,
    error: Error,
}

impl StageFailure {
    pub(crate) fn into_finding(self) -> Finding {
        match self.error {
            Error::InsufficientBalance {
                available,
                requested,
            } => Finding::InsufficientBalance {
                stage: self.source,
                field: self.field,
                available,
                requested,
            },
            Error::UnitMismatch { left, right } => Finding::UnitMismatch {
                path: self.field.path().to_string(),
                expected: left,
                found: right,
            },
            other => Finding::Schema {
                path: self.field.path().to_string(),
                message: other.to_string(),
            },
        }
    }
}

fn step(
    result: Result<Quantity>,
    source: Stage,
    field: LedgerField,
) -> std::result::Result<Quantity, StageFailure> {
    result.map_err(|error| StageFailure {
        source,
        field,
        error,
    })
}

// Shared by evaluation and validation so an empty validation report implies
// the evaluation cannot fail on balances or units.
pub(crate) fn supply_stages(
    side: &SupplyLedgerSide,
) -> std::result::Result<SupplyBreakdown, StageFailure> {
    use LedgerField as F;
    let max_actual_ssa = step(
        side.potential.checked_sub(&side.adjustment),
        Stage::PotentialSupply,
        F::SupplyAdjustment,
    )?;
    let actual_ssa = step(
        max_actual_ssa.checked_sub(&side.export_flow),
        Stage::MaxActualSsaSupply,
        F::SupplyExport,
    )?;
    let actual = step(
        actual_ssa.checked_add(&side.import_flow),
        Stage::ActualSsaSupply,
        F::SupplyImport,
    )?;
    let available_actual = step(
        actual.checked_sub(&side.flow_loss),
        Stage::ActualSupply,
        F::FlowLoss,
    )?;
    Ok(SupplyBreakdown {
        potential: side.potential.clone(),
        max_actual_ssa,
        actual_ssa,
        actual,
        available_actual,
    })
}

pub(crate) fn demand_stages(
    side: &DemandLedgerSide,
) -> std::result::Result<DemandBreakdown, StageFailure> {
    use LedgerField as F;
    let max_actual_sda = step(
        side.potential.checked_sub(&side.adjustment),
        Stage::PotentialDemand,
        F::DemandAdjustment,
    )?;
    let actual_sda = step(
        max_actual_sda.checked_sub(&side.export_flow),
        Stage::MaxActualSdaDemand,
        F::DemandExport,
    )?;
    let actual = step(
        actual_sda.checked_add(&side.import_flow),
        Stage::ActualSdaDemand,
        F::DemandImport,
    )?;
    Ok(DemandBreakdown {
        potential: side.potential.clone(),
        max_actual_sda,
        actual_sda,
        actual,
    })
}

pub fn evaluate_supply(side: &SupplyLedgerSide) -> Result<SupplyBreakdown> {
    supply_stages(side).map_err(|f| f.error)
}

pub fn evaluate_demand(side: &DemandLedgerSide) -> Result<DemandBreakdown> {
    demand_stages(side).map_err(|f| f.error)
}

/// Realized quantity: the smaller of available actual supply and actual demand.
pub fn actual_use(available_actual: &Quantity, actual_demand: &Quantity) -> Result<Quantity> {
    available_actual.min(actual_demand)
}

fn ratio(numerator: &Quantity, denominator: &Quantity) -> Option<f64> {
    (denominator.value() > 0.0).then(|| numerator.value() / denominator.value())
}

pub fn compute_indices(
    actual_use: &Quantity,
    supply: &SupplyBreakdown,
    demand: &DemandBreakdown,
) -> Indices {
    let scr = ratio(actual_use, &supply.available_actual);
    let dsr = ratio(actual_use, &demand.actual);
    let sdb = scr.zip(dsr).map(|(s, d)| s - d);
    Indices {
        scr,
        dsr,
        sdb,
        local_supply_reliance: ratio(actual_use, &supply.actual_ssa),
        local_demand_reliance: ratio(actual_use, &demand.actual_sda),
    }
}

pub fn classify(indices: &Indices, epsilon: f64) -> RealizationType {
    match indices.sdb {
        None => RealizationType::Undefined,
        Some(sdb) if sdb.abs() <= epsilon => RealizationType::Balanced,
        Some(sdb) if sdb > epsilon => RealizationType::SupplyLimited,
        Some(_) => RealizationType::DemandLimited,
    }
}

pub fn evaluate_service(ledger: &ServiceLedger, epsilon: f64) -> Result<EvaluationResult> {
    let report = validate_ledger(ledger, &ledger.profile);
    if !report.is_empty() {
        return Err(Error::ValidationFailed(report));
    }
    let supply = evaluate_supply(&ledger.supply)?;
    let demand = evaluate_demand(&ledger.demand)?;
    let actual_use = actual_use(&supply.available_actual, &demand.actual)?;
    let indices = compute_indices(&actual_use, &supply, &demand);
    let realization = classify(&indices, epsilon);
    Ok(EvaluationResult {
        ledger: ledger.clone(),
        supply,
        demand,
        actual_use,
        indices,
        realization,
    })
}
