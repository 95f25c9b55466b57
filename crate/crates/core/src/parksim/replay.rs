//! Recounting ledgers from event logs.

use std::collections::HashMap;

use crate::accounting::{DemandLedgerSide, ServiceLedger, SupplyLedgerSide};
use crate::error::{Error, Result};
use crate::quantities::{Quantity, RegionRef, ServiceUnit};

use super::events::{Origin, SimEvent};
use super::SimulationOutcome;

#[derive(Debug, Clone, PartialEq)]
pub struct Replay {
    pub ledger: ServiceLedger,
    pub observed_actual_use: Quantity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UnitState {
    Inactive,
    Available,
    Exported,
    Lost,
    Consumed,
}

#[derive(Debug)]
struct AgentState {
    capacity: u64,
    present: bool,
    consumed: u64,
}

fn corrupt(index: usize, reason: impl Into<String>) -> Error {
    Error::CorruptLog {
        index,
        reason: reason.into(),
    }
}

/// Rebuilds the ledger and the realized-use count purely from `events`.
pub fn replay(events: &[SimEvent]) -> Result<Replay> {
    let Some(SimEvent::Header {
        template,
        service_name,
        unit,
        period,
        ssa,
        sda,
        overlap_flag,
    }) = events.first()
    else {
        return Err(corrupt(0, "log must start with a header"));
    };
    let profile = template
        .profile()
        .ok_or_else(|| corrupt(0, "custom template cannot be simulated"))?;

    let mut units: HashMap<u64, UnitState> = HashMap::new();
    let mut agents: HashMap<u64, AgentState> = HashMap::new();
    let mut s = [0u64; 5];
    let mut d = [0u64; 4];
    let mut used = 0u64;

    for (index, event) in events.iter().enumerate().skip(1) {
        match event {
            SimEvent::Header { .. } => return Err(corrupt(index, "duplicate header")),
            SimEvent::Excluded { .. } => {}
            SimEvent::SupplyUnit {
                unit,
                origin,
                active,
                ..
            } => {
                let state = match (origin, active) {
                    (Origin::Local, true) => {
                        s[0] += 1;
                        UnitState::Available
                    }
                    (Origin::Local, false) => {
                        s[0] += 1;
                        s[1] += 1;
                        UnitState::Inactive
                    }
                    (Origin::External, true) => {
                        s[3] += 1;
                        UnitState::Available
                    }
                    (Origin::External, false) => {
                        return Err(corrupt(index, format!("imported unit {unit} is inactive")))
                    }
                };
                if units.insert(*unit, state).is_some() {
                    return Err(corrupt(index, format!("duplicate supply unit {unit}")));
                }
            }
            SimEvent::SupplyExported { unit } | SimEvent::SupplyLost { unit } => {
                let exported = matches!(event, SimEvent::SupplyExported { .. });
                let state = units
                    .get_mut(unit)
                    .ok_or_else(|| corrupt(index, format!("unknown supply unit {unit}")))?;
                if *state != UnitState::Available {
                    return Err(corrupt(index, format!("unit {unit} is not in the supply pool")));
                }
                if exported {
                    *state = UnitState::Exported;
                    s[2] += 1;
                } else {
                    *state = UnitState::Lost;
                    s[4] += 1;
                }
            }
            SimEvent::Demander {
                agent,
                origin,
                capacity,
                active,
                absent,
            } => {
                match origin {
                    Origin::Local => {
                        d[0] += capacity;
                        if !active {
                            if *absent {
                                return Err(corrupt(index, "inactive resident marked absent"));
                            }
                            d[1] += capacity;
                        } else if *absent {
                            d[2] += capacity;
                        }
                    }
                    Origin::External => {
                        if !active || *absent {
                            return Err(corrupt(index, "visitor must be active and present"));
                        }
                        d[3] += capacity;
                    }
                }
                let state = AgentState {
                    capacity: *capacity,
                    present: *active && !*absent,
                    consumed: 0,
                };
                if agents.insert(*agent, state).is_some() {
                    return Err(corrupt(index, format!("duplicate demander {agent}")));
                }
            }
            SimEvent::Consumed { unit, agent } => {
                let u = units
                    .get_mut(unit)
                    .ok_or_else(|| corrupt(index, format!("consumption of unknown unit {unit}")))?;
                if *u != UnitState::Available {
                    return Err(corrupt(index, format!("unit {unit} is not available")));
                }
                let a = agents
                    .get_mut(agent)
                    .ok_or_else(|| corrupt(index, format!("consumption by unknown agent {agent}")))?;
                if !a.present || a.consumed >= a.capacity {
                    return Err(corrupt(index, format!("agent {agent} cannot consume")));
                }
                *u = UnitState::Consumed;
                a.consumed += 1;
                used += 1;
            }
        }
    }

    let unit = ServiceUnit::new(unit).map_err(|e| corrupt(0, e.to_string()))?;
    let f = |n: u64| n as f64;
    let ledger = ServiceLedger {
        service_name: service_name.clone(),
        unit: unit.clone(),
        period: period.clone(),
        ssa: RegionRef::ssa(ssa.clone()).map_err(|e| corrupt(0, e.to_string()))?,
        sda: RegionRef::sda(sda.clone()).map_err(|e| corrupt(0, e.to_string()))?,
        overlap_flag: *overlap_flag,
        profile,
        supply: SupplyLedgerSide::from_values(&unit, s.map(f))?,
        demand: DemandLedgerSide::from_values(&unit, d.map(f))?,
    };
    Ok(Replay {
        ledger,
        observed_actual_use: Quantity::new(f(used), unit)?,
    })
}

pub fn replay_count(outcome: &SimulationOutcome) -> Result<ServiceLedger> {
    replay(&outcome.events).map(|r| r.ledger)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profiles::TemplateId;

    fn header() -> SimEvent {
        SimEvent::Header {
            template: TemplateId::WildBerry,
            service_name: "wild_berry".into(),
            unit: "wild_berries".into(),
            period: "sim".into(),
            ssa: "park".into(),
            sda: "town".into(),
            overlap_flag: false,
        }
    }

    fn unit(id: u64, origin: Origin, active: bool) -> SimEvent {
        SimEvent::SupplyUnit {
            unit: id,
            carrier: id,
            origin,
            active,
        }
    }

    fn resident(agent: u64, capacity: u64, active: bool, absent: bool) -> SimEvent {
        SimEvent::Demander {
            agent,
            origin: Origin::Local,
            capacity,
            active,
            absent,
        }
    }

    #[test]
    fn hand_counted_three_berries_two_residents() {
        // berry 0 accessible and eaten, berry 1 inaccessible, berry 2 lost;
        // resident 0 eats up to 2, resident 1 is unwilling.
        let log = vec![
            header(),
            unit(0, Origin::Local, true),
            unit(1, Origin::Local, false),
            unit(2, Origin::Local, true),
            SimEvent::SupplyLost { unit: 2 },
            resident(0, 2, true, false),
            resident(1, 2, false, false),
            SimEvent::Consumed { unit: 0, agent: 0 },
        ];
        let r = replay(&log).unwrap();
        let s = &r.ledger.supply;
        let d = &r.ledger.demand;
        assert_eq!(
            [s.potential.value(), s.adjustment.value(), s.export_flow.value(), s.import_flow.value(), s.flow_loss.value()],
            [3.0, 1.0, 0.0, 0.0, 1.0]
        );
        assert_eq!(
            [d.potential.value(), d.adjustment.value(), d.export_flow.value(), d.import_flow.value()],
            [4.0, 2.0, 0.0, 0.0]
        );
        assert_eq!(r.observed_actual_use.value(), 1.0);
    }

    #[test]
    fn consumption_of_missing_berry_is_corrupt() {
        let log = vec![
            header(),
            unit(0, Origin::Local, true),
            resident(0, 1, true, false),
            SimEvent::Consumed { unit: 9, agent: 0 },
        ];
        assert!(matches!(replay(&log), Err(Error::CorruptLog { index: 3, .. })));
    }

    #[test]
    fn structural_corruptions() {
        assert!(replay(&[]).is_err());
        assert!(replay(&[unit(0, Origin::Local, true)]).is_err());
        assert!(replay(&[header(), header()]).is_err());
        assert!(replay(&[header(), unit(0, Origin::Local, true), unit(0, Origin::Local, true)]).is_err());
        assert!(replay(&[header(), SimEvent::SupplyExported { unit: 0 }]).is_err());
        assert!(replay(&[header(), unit(0, Origin::Local, false), SimEvent::SupplyLost { unit: 0 }]).is_err());
        // over capacity
        let log = vec![
            header(),
            unit(0, Origin::Local, true),
            unit(1, Origin::Local, true),
            resident(0, 1, true, false),
            SimEvent::Consumed { unit: 0, agent: 0 },
            SimEvent::Consumed { unit: 1, agent: 0 },
        ];
        assert!(replay(&log).is_err());
        // absent resident cannot consume
        let log = vec![
            header(),
            unit(0, Origin::Local, true),
            resident(0, 1, true, true),
            SimEvent::Consumed { unit: 0, agent: 0 },
        ];
        assert!(replay(&log).is_err());
    }
}
