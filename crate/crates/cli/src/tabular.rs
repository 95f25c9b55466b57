//! Comma-separated exports.

use esreal_core::report::{BundleReport, EvaluationReport, ResultEntry, ScalingReport, UNDEFINED};

fn ratio_cell(v: &esreal_core::report::Ratio) -> String {
    v.0.map(|x| x.to_string()).unwrap_or_else(|| UNDEFINED.into())
}

fn finish(w: csv::Writer<Vec<u8>>) -> String {
    String::from_utf8(w.into_inner().expect("in-memory writer")).expect("csv output is utf-8")
}

const RESULT_HEADER: [&str; 20] = [
    "service_name",
    "period",
    "unit",
    "potential_supply",
    "max_actual_ssa_supply",
    "actual_ssa_supply",
    "actual_supply",
    "available_actual_supply",
    "potential_demand",
    "max_actual_sda_demand",
    "actual_sda_demand",
    "actual_demand",
    "actual_use",
    "supply_consumption_rate",
    "demand_satisfaction_rate",
    "supply_demand_balance_index",
    "local_supply_reliance",
    "local_demand_reliance",
    "realization",
    "sdb_display",
];

pub fn results(entries: &[ResultEntry]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(RESULT_HEADER).expect("in-memory write");
    for e in entries {
        let ix = &e.indices;
        w.write_record([
            e.service_name.clone(),
            e.period.clone(),
            e.unit.clone(),
            e.supply.potential.to_string(),
            e.supply.max_actual_ssa.to_string(),
            e.supply.actual_ssa.to_string(),
            e.supply.actual.to_string(),
            e.supply.available_actual.to_string(),
            e.demand.potential.to_string(),
            e.demand.max_actual_sda.to_string(),
            e.demand.actual_sda.to_string(),
            e.demand.actual.to_string(),
            e.actual_use.to_string(),
            ratio_cell(&ix.scr),
            ratio_cell(&ix.dsr),
            ratio_cell(&ix.sdb),
            ratio_cell(&ix.local_supply_reliance),
            ratio_cell(&ix.local_demand_reliance),
            e.realization_label.clone(),
            ix.sdb_display.clone(),
        ])
        .expect("in-memory write");
    }
    finish(w)
}

pub fn evaluation(report: &EvaluationReport) -> String {
    results(&report.result)
}

/// Bundle table with the display columns first and raw values after.
pub fn bundle(report: &BundleReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "Service",
        "Supply Consumption Rate",
        "Demand Satisfaction Rate",
        "Supply-Demand Balance Index",
        "Ecosystem Service Types",
        "scr_raw",
        "dsr_raw",
        "sdb_raw",
    ])
    .expect("in-memory write");
    for r in &report.rows {
        w.write_record([
            r.service_name.clone(),
            r.scr_display.clone(),
            r.dsr_display.clone(),
            r.sdb_display.clone(),
            r.realization_label.clone(),
            r.scr.to_string(),
            r.dsr.to_string(),
            r.sdb.to_string(),
        ])
        .expect("in-memory write");
    }
    let a = &report.averages;
    w.write_record([
        "Averages".to_string(),
        a.scr_display.clone(),
        a.dsr_display.clone(),
        a.sdb_display.clone(),
        report.tendency_label.clone(),
        a.scr.to_string(),
        a.dsr.to_string(),
        a.sdb.to_string(),
    ])
    .expect("in-memory write");
    finish(w)
}

pub fn scaling(report: &ScalingReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["area", "supply", "demand"])
        .expect("in-memory write");
    for s in &report.samples {
        w.write_record([s.area.to_string(), s.supply.to_string(), s.demand.to_string()])
            .expect("in-memory write");
    }
    finish(w)
}
