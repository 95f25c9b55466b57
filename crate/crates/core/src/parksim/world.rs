//! Entity bookkeeping for one simulation run.
//!
//! Templates describe their entities through [`World`]; the world logs each
//! one, keeps running ledger tallies as it goes, and finally matches
//! available supply units against present active demanders.

use crate::accounting::{DemandLedgerSide, ServiceLedger, SupplyLedgerSide};
use crate::error::Result;
use crate::profiles::TemplateId;
use crate::quantities::{Quantity, RegionRef, ServiceUnit};

use super::events::{Origin, SimEvent};
use super::SimulationOutcome;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum UnitState {
    Inactive,
    Available,
    Exported,
    Lost,
}

#[derive(Debug, Clone, Copy)]
struct Agent {
    capacity: u64,
    present: bool,
}

#[derive(Debug, Default, Clone, Copy)]
struct Tally {
    supply_potential: u64,
    supply_adjustment: u64,
    supply_export: u64,
    supply_import: u64,
    flow_loss: u64,
    demand_potential: u64,
    demand_adjustment: u64,
    demand_export: u64,
    demand_import: u64,
}

#[derive(Debug, Clone)]
pub struct Header {
    pub template: TemplateId,
    pub service_name: String,
    pub unit: String,
    pub period: String,
    pub ssa: String,
    pub sda: String,
    pub overlap_flag: bool,
}

#[derive(Debug)]
pub struct World {
    header: Header,
    events: Vec<SimEvent>,
    units: Vec<UnitState>,
    agents: Vec<Agent>,
    tally: Tally,
}

impl World {
    pub fn new(header: Header) -> Self {
        let events = vec![SimEvent::Header {
            template: header.template,
            service_name: header.service_name.clone(),
            unit: header.unit.clone(),
            period: header.period.clone(),
            ssa: header.ssa.clone(),
            sda: header.sda.clone(),
            overlap_flag: header.overlap_flag,
        }];
        Self {
            header,
            events,
            units: Vec::new(),
            agents: Vec::new(),
            tally: Tally::default(),
        }
    }

    pub fn exclude(&mut self, entity: u64, reason: &str) {
        self.events.push(SimEvent::Excluded {
            entity,
            reason: reason.to_string(),
        });
    }

    /// Potential supply unit inside the SSA; inactive units count as adjustment.
    pub fn local_unit(&mut self, carrier: u64, active: bool) -> u64 {
        let unit = self.units.len() as u64;
        self.tally.supply_potential += 1;
        if !active {
            self.tally.supply_adjustment += 1;
        }
        self.units.push(if active {
            UnitState::Available
        } else {
            UnitState::Inactive
        });
        self.events.push(SimEvent::SupplyUnit {
            unit,
            carrier,
            origin: Origin::Local,
            active,
        });
        unit
    }

    pub fn imported_unit(&mut self, carrier: u64) -> u64 {
        let unit = self.units.len() as u64;
        self.tally.supply_import += 1;
        self.units.push(UnitState::Available);
        self.events.push(SimEvent::SupplyUnit {
            unit,
            carrier,
            origin: Origin::External,
            active: true,
        });
        unit
    }

    pub fn is_available(&self, unit: u64) -> bool {
        self.units[unit as usize] == UnitState::Available
    }

    /// Ids of units currently in the supply pool, in id order.
    pub fn available_units(&self) -> Vec<u64> {
        (0..self.units.len() as u64)
            .filter(|&u| self.is_available(u))
            .collect()
    }

    pub fn export(&mut self, unit: u64) {
        assert!(self.is_available(unit), "exporting unavailable unit {unit}");
        self.units[unit as usize] = UnitState::Exported;
        self.tally.supply_export += 1;
        self.events.push(SimEvent::SupplyExported { unit });
    }

    pub fn lose(&mut self, unit: u64) {
        assert!(self.is_available(unit), "losing unavailable unit {unit}");
        self.units[unit as usize] = UnitState::Lost;
        self.tally.flow_loss += 1;
        self.events.push(SimEvent::SupplyLost { unit });
    }

    /// SDA resident. Inactive residents count as demand adjustment, active
    /// absent ones as demand export.
    pub fn resident(&mut self, capacity: u64, active: bool, absent: bool) -> u64 {
        let agent = self.agents.len() as u64;
        let absent = active && absent;
        self.tally.demand_potential += capacity;
        if !active {
            self.tally.demand_adjustment += capacity;
        } else if absent {
            self.tally.demand_export += capacity;
        }
        self.agents.push(Agent {
            capacity,
            present: active && !absent,
        });
        self.events.push(SimEvent::Demander {
            agent,
            origin: Origin::Local,
            capacity,
            active,
            absent,
        });
        agent
    }

    pub fn visitor(&mut self, capacity: u64) -> u64 {
        let agent = self.agents.len() as u64;
        self.tally.demand_import += capacity;
        self.agents.push(Agent {
            capacity,
            present: true,
        });
        self.events.push(SimEvent::Demander {
            agent,
            origin: Origin::External,
            capacity,
            active: true,
            absent: false,
        });
        agent
    }

    /// Greedy, exhaustive matching: each present demander in id order takes
    /// units in id order until its capacity is met or supply runs out.
    fn match_supply(&mut self) -> u64 {
        let mut pool = self.available_units().into_iter();
        let mut used = 0;
        'agents: for (agent, a) in self.agents.iter().enumerate() {
            if !a.present {
                continue;
            }
            for _ in 0..a.capacity {
                let Some(unit) = pool.next() else {
                    break 'agents;
                };
                self.events.push(SimEvent::Consumed {
                    unit,
                    agent: agent as u64,
                });
                used += 1;
            }
        }
        used
    }

    pub(crate) fn finish(mut self) -> Result<SimulationOutcome> {
        let used = self.match_supply();
        let unit = ServiceUnit::new(&self.header.unit)?;
        let t = self.tally;
        let f = |n: u64| n as f64;
        let ledger = ServiceLedger {
            service_name: self.header.service_name.clone(),
            unit: unit.clone(),
            period: self.header.period.clone(),
            ssa: RegionRef::ssa(self.header.ssa.clone())?,
            sda: RegionRef::sda(self.header.sda.clone())?,
            overlap_flag: self.header.overlap_flag,
            profile: self
                .header
                .template
                .profile()
                .expect("simulated templates are built in"),
            supply: SupplyLedgerSide::from_values(
                &unit,
                [
                    f(t.supply_potential),
                    f(t.supply_adjustment),
                    f(t.supply_export),
                    f(t.supply_import),
                    f(t.flow_loss),
                ],
            )?,
            demand: DemandLedgerSide::from_values(
                &unit,
                [
                    f(t.demand_potential),
                    f(t.demand_adjustment),
                    f(t.demand_export),
                    f(t.demand_import),
                ],
            )?,
        };
        Ok(SimulationOutcome {
            ledger,
            observed_actual_use: Quantity::new(used as f64, unit)?,
            events: self.events,
        })
    }
}
