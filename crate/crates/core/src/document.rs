//! Ledger and scenario documents.
//!
//! Ledgers are TOML documents holding one `[[ledger]]` table per service and
//! period:
//!
//! ```toml
//! [[ledger]]
//! service_name = "wild_berry"
//! unit = "wild_berries"
//! period = "2024-07"
//! ssa = "urban_park"
//! sda = "walking_distance_communities"
//! overlap_flag = false
//! profile = "wild_berry"   # or { carrier_mobile = .., demander_mobile = .., in_situ = .. }
//!
//! [ledger.supply]
//! potential = 100
//! adjustment = 30
//! export_flow = 10
//! import_flow = 5
//! flow_loss = 3
//!
//! [ledger.demand]
//! potential = 90
//! adjustment = 20
//! export_flow = 15
//! import_flow = 25
//! ```
//!
//! Flow fields may be omitted only when the profile forces them to zero.
//! Unknown keys are rejected.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::accounting::{DemandLedgerSide, ServiceLedger, SupplyLedgerSide};
use crate::parksim::{ParkScenario, Registry};
use crate::profiles::{
    forced_zero_fields, validate_ledger, Finding, LedgerField, ServiceFlowProfile, TemplateId,
};
use crate::quantities::{Quantity, RegionRef, ServiceUnit};

/// A finding located in a multi-ledger document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LedgerFinding {
    pub ledger: usize,
    pub service_name: String,
    pub period: String,
    #[serde(flatten)]
    pub finding: Finding,
}

impl LedgerFinding {
    pub fn path(&self) -> String {
        format!("ledger[{}].{}", self.ledger, self.finding.path())
    }
}

impl fmt::Display for LedgerFinding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ledger[{}] ({} {}): {}", self.ledger, self.service_name, self.period, self.finding)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DocumentError {
    /// The text is not a well-formed document of the expected shape.
    #[error("cannot parse document: {0}")]
    Parse(String),
    /// Well-formed, but values break the ledger schema.
    #[error("document has {} schema finding(s)", .0.len())]
    Schema(Vec<LedgerFinding>),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LedgerFile {
    #[serde(default)]
    ledger: Vec<RawLedger>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFlags {
    carrier_mobile: bool,
    demander_mobile: bool,
    in_situ: bool,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(untagged)]
enum RawProfile {
    Template(String),
    Flags(ProfileFlags),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSupply {
    potential: Option<f64>,
    adjustment: Option<f64>,
    export_flow: Option<f64>,
    import_flow: Option<f64>,
    flow_loss: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDemand {
    potential: Option<f64>,
    adjustment: Option<f64>,
    export_flow: Option<f64>,
    import_flow: Option<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLedger {
    service_name: String,
    unit: String,
    period: String,
    ssa: String,
    sda: String,
    #[serde(default)]
    overlap_flag: bool,
    profile: RawProfile,
    supply: RawSupply,
    demand: RawDemand,
}

struct Converter<'a> {
    index: usize,
    raw: &'a RawLedger,
    findings: Vec<LedgerFinding>,
}

impl Converter<'_> {
    fn schema(&mut self, path: &str, message: impl Into<String>) {
        self.findings.push(LedgerFinding {
            ledger: self.index,
            service_name: self.raw.service_name.clone(),
            period: self.raw.period.clone(),
            finding: Finding::Schema {
                path: path.to_string(),
                message: message.into(),
            },
        });
    }

    fn profile(&mut self) -> Option<ServiceFlowProfile> {
        match &self.raw.profile {
            RawProfile::Template(name) => match name.parse::<TemplateId>() {
                Ok(TemplateId::Custom) => {
                    self.schema("profile", "custom profiles need explicit flags");
                    None
                }
                Ok(t) => t.profile(),
                Err(e) => {
                    self.schema("profile", e.to_string());
                    None
                }
            },
            RawProfile::Flags(f) => {
                match ServiceFlowProfile::new(f.carrier_mobile, f.demander_mobile, f.in_situ) {
                    Ok(p) => Some(p),
                    Err(e) => {
                        self.schema("profile", e.to_string());
                        None
                    }
                }
            }
        }
    }

    fn quantity(
        &mut self,
        field: LedgerField,
        value: Option<f64>,
        unit: &ServiceUnit,
        profile: Option<&ServiceFlowProfile>,
    ) -> Option<Quantity> {
        let forced = profile.is_some_and(|p| forced_zero_fields(p).contains(&field));
        let value = match value {
            Some(v) => v,
            None if forced => 0.0,
            None => {
                self.schema(field.path(), "required field is missing");
                return None;
            }
        };
        match Quantity::new(value, unit.clone()) {
            Ok(q) => Some(q),
            Err(e) => {
                self.schema(field.path(), e.to_string());
                None
            }
        }
    }

    fn convert(mut self) -> Result<ServiceLedger, Vec<LedgerFinding>> {
        let raw = self.raw;
        let unit = ServiceUnit::new(&raw.unit)
            .map_err(|e| self.schema("unit", e.to_string()))
            .ok();
        let ssa = RegionRef::ssa(raw.ssa.clone())
            .map_err(|e| self.schema("ssa", e.to_string()))
            .ok();
        let sda = RegionRef::sda(raw.sda.clone())
            .map_err(|e| self.schema("sda", e.to_string()))
            .ok();
        if raw.service_name.trim().is_empty() {
            self.schema("service_name", "label must not be empty");
        }
        if raw.period.trim().is_empty() {
            self.schema("period", "label must not be empty");
        }
        let profile = self.profile();

        let Some(unit) = unit else {
            return Err(self.findings);
        };
        use LedgerField as F;
        let p = profile.as_ref();
        let (s, d) = (&raw.supply, &raw.demand);
        let supply = [
            self.quantity(F::SupplyPotential, s.potential, &unit, p),
            self.quantity(F::SupplyAdjustment, s.adjustment, &unit, p),
            self.quantity(F::SupplyExport, s.export_flow, &unit, p),
            self.quantity(F::SupplyImport, s.import_flow, &unit, p),
            self.quantity(F::FlowLoss, s.flow_loss, &unit, p),
        ];
        let demand = [
            self.quantity(F::DemandPotential, d.potential, &unit, p),
            self.quantity(F::DemandAdjustment, d.adjustment, &unit, p),
            self.quantity(F::DemandExport, d.export_flow, &unit, p),
            self.quantity(F::DemandImport, d.import_flow, &unit, p),
        ];

        if !self.findings.is_empty() {
            return Err(self.findings);
        }
        let [Some(sp), Some(sa), Some(se), Some(si), Some(sl)] = supply else {
            unreachable!("missing supply quantities are reported as findings")
        };
        let [Some(dp), Some(da), Some(de), Some(di)] = demand else {
            unreachable!("missing demand quantities are reported as findings")
        };
        Ok(ServiceLedger {
            service_name: raw.service_name.clone(),
            unit,
            period: raw.period.clone(),
            ssa: ssa.expect("checked above"),
            sda: sda.expect("checked above"),
            overlap_flag: raw.overlap_flag,
            profile: profile.expect("checked above"),
            supply: SupplyLedgerSide {
                potential: sp,
                adjustment: sa,
                export_flow: se,
                import_flow: si,
                flow_loss: sl,
            },
            demand: DemandLedgerSide {
                potential: dp,
                adjustment: da,
                export_flow: de,
                import_flow: di,
            },
        })
    }
}

fn parse_error(e: toml::de::Error) -> DocumentError {
    DocumentError::Parse(e.to_string())
}

/// Parses a ledger document into ledgers, in document order.
pub fn parse_ledgers(text: &str) -> Result<Vec<ServiceLedger>, DocumentError> {
    let file: LedgerFile = toml::from_str(text).map_err(parse_error)?;
    let mut ledgers = Vec::with_capacity(file.ledger.len());
    let mut findings = Vec::new();
    for (index, raw) in file.ledger.iter().enumerate() {
        let converter = Converter {
            index,
            raw,
            findings: Vec::new(),
        };
        match converter.convert() {
            Ok(l) => ledgers.push(l),
            Err(f) => findings.extend(f),
        }
    }
    if findings.is_empty() {
        Ok(ledgers)
    } else {
        Err(DocumentError::Schema(findings))
    }
}

/// Profile validation for every ledger of a document.
pub fn validate_ledgers(ledgers: &[ServiceLedger]) -> Vec<LedgerFinding> {
    ledgers
        .iter()
        .enumerate()
        .flat_map(|(index, l)| {
            validate_ledger(l, &l.profile)
                .findings
                .into_iter()
                .map(move |finding| LedgerFinding {
                    ledger: index,
                    service_name: l.service_name.clone(),
                    period: l.period.clone(),
                    finding,
                })
        })
        .collect()
}

fn raw_profile(profile: &ServiceFlowProfile) -> RawProfile {
    TemplateId::BUILT_IN
        .into_iter()
        .find(|t| t.profile().as_ref() == Some(profile))
        .map(|t| RawProfile::Template(t.name().to_string()))
        .unwrap_or(RawProfile::Flags(ProfileFlags {
            carrier_mobile: profile.carrier_mobile(),
            demander_mobile: profile.demander_mobile(),
            in_situ: profile.in_situ(),
        }))
}

fn raw_ledger(l: &ServiceLedger) -> RawLedger {
    let v = |q: &Quantity| Some(q.value());
    RawLedger {
        service_name: l.service_name.clone(),
        unit: l.unit.to_string(),
        period: l.period.clone(),
        ssa: l.ssa.id().to_string(),
        sda: l.sda.id().to_string(),
        overlap_flag: l.overlap_flag,
        profile: raw_profile(&l.profile),
        supply: RawSupply {
            potential: v(&l.supply.potential),
            adjustment: v(&l.supply.adjustment),
            export_flow: v(&l.supply.export_flow),
            import_flow: v(&l.supply.import_flow),
            flow_loss: v(&l.supply.flow_loss),
        },
        demand: RawDemand {
            potential: v(&l.demand.potential),
            adjustment: v(&l.demand.adjustment),
            export_flow: v(&l.demand.export_flow),
            import_flow: v(&l.demand.import_flow),
        },
    }
}

/// Writes ledgers as a document; every field is written explicitly.
pub fn serialize_ledgers(ledgers: &[ServiceLedger]) -> String {
    let file = LedgerFile {
        ledger: ledgers.iter().map(raw_ledger).collect(),
    };
    toml::to_string(&file).expect("ledger documents always serialize")
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    seed: u64,
    template: String,
    params: toml::Table,
}

/// Parses a scenario document:
///
/// ```toml
/// seed = 42
/// template = "recreation"
///
/// [params]
/// capacity = 500
/// # ...
/// ```
pub fn parse_scenario(text: &str, registry: &Registry) -> Result<ParkScenario, DocumentError> {
    let file: ScenarioFile = toml::from_str(text).map_err(parse_error)?;
    let service = registry
        .parse(&file.template, file.params)
        .map_err(|e| DocumentError::Parse(e.to_string()))?;
    Ok(ParkScenario {
        seed: file.seed,
        service,
    })
}

pub fn serialize_scenario(scenario: &ParkScenario) -> String {
    let file = ScenarioFile {
        seed: scenario.seed,
        template: scenario.service.template().name().to_string(),
        params: scenario.service.params(),
    };
    toml::to_string(&file).expect("scenario documents always serialize")
}
