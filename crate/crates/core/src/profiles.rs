//! Carrier/demander mobility typology and ledger validation.
//!
//! A service whose carrier cannot leave its supply area has no supply import,
//! export or supply-to-demand loss; a service whose demanders cannot move has
//! no demand import or export. [`forced_zero_fields`] derives that set from a
//! [`ServiceFlowProfile`], and [`validate_ledger`] checks a ledger against it
//! together with unit consistency and stage balances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::accounting::{demand_stages, supply_stages, ServiceLedger};
use crate::error::{Error, Result};
use crate::quantities::{Quantity, RegionKind, RegionRef, ServiceUnit};

/// Every quantity field of a [`ServiceLedger`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LedgerField {
    SupplyPotential,
    SupplyAdjustment,
    SupplyExport,
    SupplyImport,
    FlowLoss,
    DemandPotential,
    DemandAdjustment,
    DemandExport,
    DemandImport,
}

impl LedgerField {
    pub const ALL: [LedgerField; 9] = [
        LedgerField::SupplyPotential,
        LedgerField::SupplyAdjustment,
        LedgerField::SupplyExport,
        LedgerField::SupplyImport,
        LedgerField::FlowLoss,
        LedgerField::DemandPotential,
        LedgerField::DemandAdjustment,
        LedgerField::DemandExport,
        LedgerField::DemandImport,
    ];

    pub fn name(self) -> &'static str {
        match self {
            LedgerField::SupplyPotential => "supply_potential",
            LedgerField::SupplyAdjustment => "supply_adjustment",
            LedgerField::SupplyExport => "supply_export",
            LedgerField::SupplyImport => "supply_import",
            LedgerField::FlowLoss => "flow_loss",
            LedgerField::DemandPotential => "demand_potential",
            LedgerField::DemandAdjustment => "demand_adjustment",
            LedgerField::DemandExport => "demand_export",
            LedgerField::DemandImport => "demand_import",
        }
    }

    /// Location of the field inside a ledger document.
    pub fn path(self) -> &'static str {
        match self {
            LedgerField::SupplyPotential => "supply.potential",
            LedgerField::SupplyAdjustment => "supply.adjustment",
            LedgerField::SupplyExport => "supply.export_flow",
            LedgerField::SupplyImport => "supply.import_flow",
            LedgerField::FlowLoss => "supply.flow_loss",
            LedgerField::DemandPotential => "demand.potential",
            LedgerField::DemandAdjustment => "demand.adjustment",
            LedgerField::DemandExport => "demand.export_flow",
            LedgerField::DemandImport => "demand.import_flow",
        }
    }

    pub fn get(self, ledger: &ServiceLedger) -> &Quantity {
        let (s, d) = (&ledger.supply, &ledger.demand);
        match self {
            LedgerField::SupplyPotential => &s.potential,
            LedgerField::SupplyAdjustment => &s.adjustment,
            LedgerField::SupplyExport => &s.export_flow,
            LedgerField::SupplyImport => &s.import_flow,
            LedgerField::FlowLoss => &s.flow_loss,
            LedgerField::DemandPotential => &d.potential,
            LedgerField::DemandAdjustment => &d.adjustment,
            LedgerField::DemandExport => &d.export_flow,
            LedgerField::DemandImport => &d.import_flow,
        }
    }
}

impl fmt::Display for LedgerField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Derived accounting stage that a deduction is taken from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    PotentialSupply,
    MaxActualSsaSupply,
    ActualSsaSupply,
    ActualSupply,
    AvailableActualSupply,
    PotentialDemand,
    MaxActualSdaDemand,
    ActualSdaDemand,
    ActualDemand,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::PotentialSupply => "potential_supply",
            Stage::MaxActualSsaSupply => "max_actual_ssa_supply",
            Stage::ActualSsaSupply => "actual_ssa_supply",
            Stage::ActualSupply => "actual_supply",
            Stage::AvailableActualSupply => "available_actual_supply",
            Stage::PotentialDemand => "potential_demand",
            Stage::MaxActualSdaDemand => "max_actual_sda_demand",
            Stage::ActualSdaDemand => "actual_sda_demand",
            Stage::ActualDemand => "actual_demand",
        }
    }
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ServiceFlowProfile {
    carrier_mobile: bool,
    demander_mobile: bool,
    in_situ: bool,
}

impl ServiceFlowProfile {
    pub fn new(carrier_mobile: bool, demander_mobile: bool, in_situ: bool) -> Result<Self> {
        if in_situ && carrier_mobile {
            return Err(Error::InvalidProfile(
                "an in-situ service cannot have a mobile carrier",
            ));
        }
        Ok(Self {
            carrier_mobile,
            demander_mobile,
            in_situ,
        })
    }

    pub fn carrier_mobile(&self) -> bool {
        self.carrier_mobile
    }

    pub fn demander_mobile(&self) -> bool {
        self.demander_mobile
    }

    pub fn in_situ(&self) -> bool {
        self.in_situ
    }
}

/// Built-in service templates plus user-defined profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateId {
    WildBerry,
    Pollination,
    Recreation,
    Custom,
}

impl TemplateId {
    pub const BUILT_IN: [TemplateId; 3] = [
        TemplateId::WildBerry,
        TemplateId::Pollination,
        TemplateId::Recreation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TemplateId::WildBerry => "wild_berry",
            TemplateId::Pollination => "pollination",
            TemplateId::Recreation => "recreation",
            TemplateId::Custom => "custom",
        }
    }

    /// Mobility profile of a built-in template; `None` for `Custom`.
    pub fn profile(self) -> Option<ServiceFlowProfile> {
        let (carrier, demander, in_situ) = match self {
            TemplateId::WildBerry => (true, true, false),
            TemplateId::Pollination => (true, false, false),
            TemplateId::Recreation => (false, true, true),
            TemplateId::Custom => return None,
        };
        Some(ServiceFlowProfile {
            carrier_mobile: carrier,
            demander_mobile: demander,
            in_situ,
        })
    }
}

impl fmt::Display for TemplateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TemplateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "wild_berry" => Ok(TemplateId::WildBerry),
            "pollination" => Ok(TemplateId::Pollination),
            "recreation" => Ok(TemplateId::Recreation),
            "custom" => Ok(TemplateId::Custom),
            other => Err(Error::UnknownTemplate(other.to_string())),
        }
    }
}

pub fn forced_zero_fields(profile: &ServiceFlowProfile) -> BTreeSet<LedgerField> {
    let mut fields = BTreeSet::new();
    if !profile.carrier_mobile || profile.in_situ {
        fields.extend([
            LedgerField::SupplyExport,
            LedgerField::SupplyImport,
            LedgerField::FlowLoss,
        ]);
    }
    if !profile.demander_mobile {
        fields.extend([LedgerField::DemandExport, LedgerField::DemandImport]);
    }
    fields
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Finding {
    ForcedZeroViolation {
        field: LedgerField,
        value: f64,
    },
    UnitMismatch {
        path: String,
        expected: String,
        found: String,
    },
    InsufficientBalance {
        stage: Stage,
        field: LedgerField,
        available: f64,
        requested: f64,
    },
    RegionKindMismatch {
        path: String,
        expected: RegionKind,
    },
    /// Document-level problem detected while reading a ledger file.
    Schema {
        path: String,
        message: String,
    },
}

impl Finding {
    pub fn kind(&self) -> &'static str {
        match self {
            Finding::ForcedZeroViolation { .. } => "ForcedZeroViolation",
            Finding::UnitMismatch { .. } => "UnitMismatch",
            Finding::InsufficientBalance { .. } => "InsufficientBalance",
            Finding::RegionKindMismatch { .. } => "RegionKindMismatch",
            Finding::Schema { .. } => "Schema",
        }
    }

    pub fn path(&self) -> &str {
        match self {
            Finding::ForcedZeroViolation { field, .. } => field.path(),
            Finding::InsufficientBalance { field, .. } => field.path(),
            Finding::UnitMismatch { path, .. }
            | Finding::RegionKindMismatch { path, .. }
            | Finding::Schema { path, .. } => path,
        }
    }
}

impl fmt::Display for Finding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Finding::ForcedZeroViolation { field, value } => write!(
                f,
                "ForcedZeroViolation({}): profile forces zero, found {value}",
                field.path()
            ),
            Finding::UnitMismatch {
                path,
                expected,
                found,
            } => write!(f, "UnitMismatch({path}): expected `{expected}`, found `{found}`"),
            Finding::InsufficientBalance {
                stage,
                field,
                available,
                requested,
            } => write!(
                f,
                "InsufficientBalance({stage}): {} = {requested} exceeds {available}",
                field.path()
            ),
            Finding::RegionKindMismatch { path, expected } => {
                write!(f, "RegionKindMismatch({path}): expected {expected:?}")
            }
            Finding::Schema { path, message } => write!(f, "Schema({path}): {message}"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub findings: Vec<Finding>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.findings.is_empty()
    }
}

fn check_region(path: &str, region: &RegionRef, expected: RegionKind, out: &mut Vec<Finding>) {
    if region.kind() != expected {
        out.push(Finding::RegionKindMismatch {
            path: path.to_string(),
            expected,
        });
    }
}

fn check_unit(path: &str, q: &Quantity, unit: &ServiceUnit, out: &mut Vec<Finding>) -> bool {
    if q.unit() != unit {
        out.push(Finding::UnitMismatch {
            path: path.to_string(),
            expected: unit.to_string(),
            found: q.unit().to_string(),
        });
        return false;
    }
    true
}

/// Checks everything the accounting pipeline would otherwise reject.
///
/// An empty report guarantees that evaluating the ledger raises no
/// `UnitMismatch`, `InsufficientBalance` or forced-zero error: stage balances
/// are checked by running the same staged arithmetic the evaluator uses.
pub fn validate_ledger(ledger: &ServiceLedger, profile: &ServiceFlowProfile) -> ValidationReport {
    let mut findings = Vec::new();

    check_region("ssa", &ledger.ssa, RegionKind::Supply, &mut findings);
    check_region("sda", &ledger.sda, RegionKind::Demand, &mut findings);

    let mut units_ok = true;
    for field in LedgerField::ALL {
        units_ok &= check_unit(field.path(), field.get(ledger), &ledger.unit, &mut findings);
    }

    for field in forced_zero_fields(profile) {
        let q = field.get(ledger);
        if !q.is_zero() {
            findings.push(Finding::ForcedZeroViolation {
                field,
                value: q.value(),
            });
        }
    }

    if units_ok {
        if let Err(failure) = supply_stages(&ledger.supply) {
            findings.push(failure.into_finding());
        }
        if let Err(failure) = demand_stages(&ledger.demand) {
            findings.push(failure.into_finding());
        }
    }

    ValidationReport { findings }
}
