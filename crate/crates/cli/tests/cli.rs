use std::fs;
use std::io::BufReader;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use esreal_core::document::parse_ledgers;
use esreal_core::parksim::{events::read_jsonl, replay};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn esreal<I, S>(args: I) -> Output
where
    I: IntoIterator<Item = S>,
    S: AsRef<std::ffi::OsStr>,
{
    Command::new(env!("CARGO_BIN_EXE_esreal"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn evaluate_worked_ledger() {
    let o = esreal([Path::new("evaluate").as_os_str(), fixture("wild_berry_ok.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    let report: toml::Table = stdout(&o).parse().unwrap();
    let r = &report["result"].as_array().unwrap()[0];
    assert_eq!(r["actual_use"].as_float(), Some(62.0));
    assert_eq!(r["realization"].as_str(), Some("supply_limited"));
    assert_eq!(r["indices"]["dsr_display"].as_str(), Some("0.78"));
}

#[test]
fn evaluate_writes_out_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let o = esreal([
        "evaluate".as_ref(),
        fixture("bundle_table.toml").as_os_str(),
        "--format".as_ref(),
        "tabular".as_ref(),
        "--out".as_ref(),
        out.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 8);
    assert!(text.lines().nth(7).unwrap().starts_with("ES 7,2024,units,100,"));
}

#[test]
fn valid_document_validates() {
    let o = esreal([Path::new("validate").as_os_str(), fixture("wild_berry_ok.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("valid = true"));
}

#[test]
fn schema_findings_are_reported_by_path() {
    let o = esreal([Path::new("validate").as_os_str(), fixture("ledger_missing_field.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    let doc: toml::Table = stdout(&o).parse().unwrap();
    let f = &doc["finding"].as_array().unwrap()[0];
    assert_eq!(f["path"].as_str(), Some("ledger[0].supply.adjustment"));
    assert_eq!(f["kind"].as_str(), Some("Schema"));
}

#[test]
fn evaluate_findings_go_to_stderr() {
    let o = esreal([Path::new("evaluate").as_os_str(), fixture("recreation_export.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("supply.export_flow"));
}

#[test]
fn single_service_bundle() {
    let o = esreal([Path::new("bundle").as_os_str(), fixture("bundle_single.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: toml::Table = stdout(&o).parse().unwrap();
    assert_eq!(doc["richness"].as_integer(), Some(1));
    assert_eq!(doc["tendency"].as_str(), Some("balanced_overall"));
}

#[test]
fn constant_series_has_no_shift() {
    let o = esreal([Path::new("series").as_os_str(), fixture("series_constant.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: toml::Table = stdout(&o).parse().unwrap();
    assert!(doc["shifts"].as_array().unwrap().is_empty());
    assert_eq!(doc["trends"]["available_actual_supply"].as_str(), Some("stable"));
}

#[test]
fn scaling_equal_slopes() {
    let o = esreal([
        "scaling",
        "--supply-slope",
        "2.5",
        "--demand-slope",
        "2.5",
        "--sda-area",
        "8",
        "--samples",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let doc: toml::Table = stdout(&o).parse().unwrap();
    assert_eq!(doc["scenario"].as_str(), Some("S2"));
    assert_eq!(doc["balanced_area"].as_float(), Some(8.0));
    assert_eq!(doc["samples"].as_array().unwrap().len(), 5);
}

#[test]
fn scaling_balance_point() {
    let o = esreal(["scaling", "--supply-slope", "2", "--demand-slope", "1", "--ssa-area", "10"]);
    assert_eq!(o.status.code(), Some(0));
    let doc: toml::Table = stdout(&o).parse().unwrap();
    assert_eq!(doc["balanced_area"].as_float(), Some(20.0));
    assert_eq!(doc["scenario"].as_str(), Some("S3"));
    assert_eq!(doc["samples"].as_array().unwrap().len(), 11);
}

#[test]
fn zero_supply_reports_undefined() {
    let o = esreal([Path::new("evaluate").as_os_str(), fixture("zero_supply.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    let doc: toml::Table = stdout(&o).parse().unwrap();
    let r = &doc["result"].as_array().unwrap()[0];
    assert_eq!(r["indices"]["scr"].as_str(), Some("undefined"));
    assert_eq!(r["indices"]["sdb_display"].as_str(), Some("undefined"));
    assert_eq!(r["indices"]["dsr"].as_float(), Some(0.0));
    assert_eq!(r["realization"].as_str(), Some("undefined"));
}

#[test]
fn bundle_table_first_row() {
    let o = esreal([
        "bundle".as_ref(),
        fixture("bundle_table.toml").as_os_str(),
        "--format".as_ref(),
        "tabular".as_ref(),
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with(
        "Service,Supply Consumption Rate,Demand Satisfaction Rate,Supply-Demand Balance Index,Ecosystem Service Types"
    ));
    assert!(lines.next().unwrap().starts_with("ES 1,1.00,1.00,0.00,S-D Balanced,"));
}

#[test]
fn scaling_requires_one_area() {
    let o = esreal(["scaling", "--supply-slope", "1", "--demand-slope", "2"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulate_writes_ledger_and_events() {
    let dir = tempfile::tempdir().unwrap();
    let ledger = dir.path().join("ledger.toml");
    let events = dir.path().join("events.jsonl");
    let o = esreal([
        "simulate".as_ref(),
        fixture("scenario_seed42.toml").as_os_str(),
        "--out".as_ref(),
        ledger.as_os_str(),
        "--events".as_ref(),
        events.as_os_str(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).contains("observed == pipeline"));

    let ledgers = parse_ledgers(&fs::read_to_string(&ledger).unwrap()).unwrap();
    let log = read_jsonl(BufReader::new(fs::File::open(&events).unwrap())).unwrap();
    assert_eq!(replay(&log).unwrap().ledger, ledgers[0]);

    // the generated ledger evaluates through the other commands
    let e = esreal(["evaluate".as_ref(), ledger.as_os_str()]);
    assert_eq!(e.status.code(), Some(0));
}

#[test]
fn seed_flag_overrides_scenario() {
    let run = |seed: &str| {
        esreal([
            "simulate".as_ref(),
            fixture("scenario_seed42.toml").as_os_str(),
            "--seed".as_ref(),
            seed.as_ref(),
        ])
    };
    let plain = esreal([Path::new("simulate").as_os_str(), fixture("scenario_seed42.toml").as_os_str()]);
    assert_eq!(run("42").stdout, plain.stdout);
    assert_ne!(run("43").stdout, plain.stdout);
}

#[test]
fn zero_resident_scenario_has_no_use() {
    let o = esreal([Path::new("simulate").as_os_str(), fixture("scenario_no_residents.toml").as_os_str()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("observed_actual_use=0 "));
}

#[test]
fn help_exits_zero() {
    assert_eq!(esreal(["--help"]).status.code(), Some(0));
}
