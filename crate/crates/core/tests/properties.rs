use esreal_core::*;
use proptest::prelude::*;

fn unit() -> ServiceUnit {
    ServiceUnit::new("units").unwrap()
}

fn template() -> impl Strategy<Value = TemplateId> {
    prop_oneof![
        Just(TemplateId::WildBerry),
        Just(TemplateId::Pollination),
        Just(TemplateId::Recreation),
    ]
}

/// Consistent integer ledger respecting the template's forced-zero fields.
fn integer_ledger() -> impl Strategy<Value = ServiceLedger> {
    (template(), prop::array::uniform9(0u64..=1_000_000)).prop_map(|(t, r)| {
        let profile = t.profile().unwrap();
        let zero = forced_zero_fields(&profile);
        let keep = |f: LedgerField, v: u64| if zero.contains(&f) { 0 } else { v };

        let potential = r[0];
        let adjustment = r[1] % (potential + 1);
        let max_actual = potential - adjustment;
        let export = keep(LedgerField::SupplyExport, r[2] % (max_actual + 1));
        let import = keep(LedgerField::SupplyImport, r[3]);
        let actual = max_actual - export + import;
        let loss = keep(LedgerField::FlowLoss, r[4] % (actual + 1));

        let d_potential = r[5];
        let d_adjustment = r[6] % (d_potential + 1);
        let d_max = d_potential - d_adjustment;
        let d_export = keep(LedgerField::DemandExport, r[7] % (d_max + 1));
        let d_import = keep(LedgerField::DemandImport, r[8]);

        let f = |v: u64| v as f64;
        ledger(
            t,
            [f(potential), f(adjustment), f(export), f(import), f(loss)],
            [f(d_potential), f(d_adjustment), f(d_export), f(d_import)],
        )
    })
}

/// Consistent real-valued wild-berry ledger built from stage fractions.
fn real_ledger() -> impl Strategy<Value = ServiceLedger> {
    (
        0.0f64..1e6,
        prop::array::uniform4(0.0f64..=1.0),
        0.0f64..1e5,
        0.0f64..1e6,
        prop::array::uniform2(0.0f64..=1.0),
        0.0f64..1e5,
    )
        .prop_map(|(potential, fr, import, d_potential, dfr, d_import)| {
            let adjustment = potential * fr[0];
            let max_actual = potential - adjustment;
            let export = max_actual * fr[1];
            let actual = (max_actual - export) + import;
            let loss = actual * fr[2];
            let d_adjustment = d_potential * dfr[0];
            let d_export = (d_potential - d_adjustment) * dfr[1];
            ledger(
                TemplateId::WildBerry,
                [potential, adjustment, export, import, loss],
                [d_potential, d_adjustment, d_export, d_import],
            )
        })
        .prop_filter("evaluable", |l| validate_ledger(l, &l.profile).is_empty())
}

fn ledger(t: TemplateId, s: [f64; 5], d: [f64; 4]) -> ServiceLedger {
    let u = unit();
    ServiceLedger {
        service_name: t.name().into(),
        unit: u.clone(),
        period: "2024".into(),
        ssa: RegionRef::ssa("ssa").unwrap(),
        sda: RegionRef::sda("sda").unwrap(),
        overlap_flag: t == TemplateId::Pollination,
        profile: t.profile().unwrap(),
        supply: SupplyLedgerSide::from_values(&u, s).unwrap(),
        demand: DemandLedgerSide::from_values(&u, d).unwrap(),
    }
}

fn conserved(l: &ServiceLedger) -> f64 {
    let s = &l.supply;
    s.potential.value() - s.adjustment.value() - s.export_flow.value() + s.import_flow.value()
        - s.flow_loss.value()
}

fn check_min_rule(r: &EvaluationResult) -> Result<(), TestCaseError> {
    let aas = r.supply.available_actual.value();
    let ad = r.demand.actual.value();
    let au = r.actual_use.value();
    prop_assert_eq!(au, aas.min(ad));
    prop_assert!(au <= aas && au <= ad && (au == aas || au == ad));
    match r.realization {
        RealizationType::SupplyLimited => prop_assert_eq!(r.indices.scr, Some(1.0)),
        RealizationType::DemandLimited => prop_assert_eq!(r.indices.dsr, Some(1.0)),
        RealizationType::Balanced => {}
        RealizationType::Undefined => prop_assert!(r.indices.sdb.is_none()),
    }
    if let Some(sdb) = r.indices.sdb {
        prop_assert!(sdb > -1.0 && sdb < 1.0);
        prop_assert_eq!(sdb, r.indices.scr.unwrap() - r.indices.dsr.unwrap());
    }
    if au > 0.0 {
        let (scr, dsr) = (r.indices.scr.unwrap(), r.indices.dsr.unwrap());
        prop_assert!(scr > 0.0 && scr <= 1.0 && dsr > 0.0 && dsr <= 1.0);
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2_000))]

    #[test]
    fn integer_ledgers_obey_min_rule_and_conservation(l in integer_ledger()) {
        let r = evaluate_service(&l, DEFAULT_EPSILON).unwrap();
        check_min_rule(&r)?;
        prop_assert_eq!(r.supply.available_actual.value(), conserved(&l));
        let s = &r.supply;
        prop_assert!(s.potential.value() >= s.max_actual_ssa.value());
        prop_assert!(s.max_actual_ssa.value() >= s.actual_ssa.value());
        prop_assert!(s.available_actual.value() <= s.actual.value());
        let d = &r.demand;
        prop_assert!(d.potential.value() >= d.max_actual_sda.value());
        prop_assert!(d.max_actual_sda.value() >= d.actual_sda.value());
    }

    #[test]
    fn real_ledgers_obey_min_rule_and_conservation(l in real_ledger()) {
        let r = evaluate_service(&l, DEFAULT_EPSILON).unwrap();
        check_min_rule(&r)?;
        let staged = r.supply.available_actual.value();
        let direct = conserved(&l);
        prop_assert!((staged - direct).abs() <= 1e-12 * staged.abs().max(direct.abs()).max(1.0));
    }

    #[test]
    fn more_import_never_reduces_use(l in integer_ledger(), delta in 0u32..100_000) {
        prop_assume!(l.profile.carrier_mobile());
        let before = evaluate_service(&l, DEFAULT_EPSILON).unwrap();
        let mut more = l.clone();
        more.supply.import_flow = Quantity::new(l.supply.import_flow.value() + delta as f64, unit()).unwrap();
        let after = evaluate_service(&more, DEFAULT_EPSILON).unwrap();
        prop_assert!(after.supply.available_actual.value() >= before.supply.available_actual.value());
        prop_assert!(after.actual_use.value() >= before.actual_use.value());
    }

    #[test]
    fn evaluation_is_deterministic(l in integer_ledger()) {
        let a = evaluate_service(&l, DEFAULT_EPSILON).unwrap();
        let b = evaluate_service(&l, DEFAULT_EPSILON).unwrap();
        prop_assert_eq!(a.indices.sdb.map(f64::to_bits), b.indices.sdb.map(f64::to_bits));
        prop_assert_eq!(a, b);
    }

    /// Arbitrary (often inconsistent) ledgers: validation predicts evaluation.
    #[test]
    fn validation_is_complete(
        t in template(),
        s in prop::array::uniform5(0u32..50),
        d in prop::array::uniform4(0u32..50),
    ) {
        let l = ledger(t, s.map(f64::from), d.map(f64::from));
        let report = validate_ledger(&l, &l.profile);
        let evaluated = evaluate_service(&l, DEFAULT_EPSILON);
        prop_assert_eq!(report.is_empty(), evaluated.is_ok());
        if report.is_empty() {
            prop_assert!(evaluate_supply(&l.supply).is_ok());
            prop_assert!(evaluate_demand(&l.demand).is_ok());
        }
    }

    #[test]
    fn document_round_trip(l in integer_ledger(), r in real_ledger()) {
        let ledgers = vec![l, r];
        let text = esreal_core::document::serialize_ledgers(&ledgers);
        prop_assert_eq!(esreal_core::document::parse_ledgers(&text).unwrap(), ledgers);
    }
}
