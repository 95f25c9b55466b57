//! Realized ecosystem service accounting.
//!
//! Measured supply, demand and flow ledgers go in; staged supply and demand
//! breakdowns, actual use, consumption/satisfaction/balance indices and a
//! realization type come out. Around that core sit multi-service bundle
//! summaries, multi-period regime analysis, linear area scaling, and a seeded
//! park simulator whose directly counted use checks the pipeline.

pub mod accounting;
pub mod bundles;
pub mod display;
pub mod document;
pub mod error;
pub mod parksim;
pub mod profiles;
pub mod quantities;
pub mod report;
pub mod scaling;
pub mod temporal;

pub use accounting::{
    actual_use, classify, compute_indices, evaluate_demand, evaluate_service, evaluate_supply,
    DemandBreakdown, DemandLedgerSide, EvaluationResult, Indices, RealizationType,
    ServiceLedger, SupplyBreakdown, SupplyLedgerSide, DEFAULT_EPSILON,
};
pub use bundles::{summarize_bundle, BundleSummary, Tendency};
pub use error::{Error, Result};
pub use profiles::{
    forced_zero_fields, validate_ledger, Finding, LedgerField, ServiceFlowProfile, TemplateId,
    ValidationReport,
};
pub use quantities::{qty_add, qty_sub, Quantity, RegionKind, RegionRef, ServiceUnit};
pub use scaling::{
    balanced_sda_area, balanced_ssa_area, classify_scenario, demand_at, supply_at, AreaEsModel,
    ScalingScenario,
};
pub use temporal::{detect_regime_shifts, evaluate_series, trend_labels, EvaluationSeries};
