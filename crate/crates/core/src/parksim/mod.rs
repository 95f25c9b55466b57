//! Seeded agent simulation of urban-park services.
//!
//! A scenario instantiates countable entities (berries, pollinators, visiting
//! slots, residents, plants, visitors), derives every ledger field by
//! counting them, and realizes use by greedily matching available supply
//! units against present demanders. The realized count is a brute-force
//! check on the accounting pipeline: it must equal
//! `evaluate_service(ledger).actual_use` exactly.

pub mod events;
pub mod pollination;
pub mod recreation;
pub mod registry;
pub mod replay;
pub mod rng;
pub mod wild_berry;
pub mod world;

use std::fmt;
use std::sync::Arc;

use crate::accounting::{evaluate_service, ServiceLedger};
use crate::error::Result;
use crate::quantities::Quantity;

pub use events::{Origin, SimEvent};
pub use pollination::Pollination;
pub use recreation::Recreation;
pub use registry::{ParkService, Registry, Sample, MAX_ENTITIES};
pub use replay::{replay, replay_count, Replay};
pub use rng::SimRng;
pub use wild_berry::WildBerry;
pub use world::{Header, World};

pub const SIM_PERIOD: &str = "sim";
pub const SIM_SSA: &str = "urban_park";

#[derive(Debug, Clone)]
pub struct ParkScenario {
    pub seed: u64,
    pub service: Arc<dyn ParkService>,
}

impl ParkScenario {
    pub fn new(seed: u64, service: impl ParkService + 'static) -> Self {
        Self {
            seed,
            service: Arc::new(service),
        }
    }
}

impl PartialEq for ParkScenario {
    fn eq(&self, other: &Self) -> bool {
        self.seed == other.seed
            && self.service.template() == other.service.template()
            && self.service.params() == other.service.params()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationOutcome {
    pub ledger: ServiceLedger,
    pub observed_actual_use: Quantity,
    pub events: Vec<SimEvent>,
}

pub fn simulate(scenario: &ParkScenario) -> Result<SimulationOutcome> {
    let service = &scenario.service;
    service.check()?;
    let template = service.template();
    let mut world = World::new(Header {
        template,
        service_name: template.name().to_string(),
        unit: service.unit_name().to_string(),
        period: SIM_PERIOD.to_string(),
        ssa: SIM_SSA.to_string(),
        sda: service.sda_name().to_string(),
        overlap_flag: service.overlap_flag(),
    });
    let mut rng = SimRng::new(scenario.seed);
    service.populate(&mut rng, &mut world);
    world.finish()
}

/// Simulated versus pipeline actual use for one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleComparison {
    pub observed: f64,
    pub pipeline: f64,
}

impl OracleComparison {
    pub fn matches(&self) -> bool {
        self.observed == self.pipeline
    }
}

impl fmt::Display for OracleComparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.matches() {
            "observed == pipeline"
        } else {
            "observed != pipeline"
        };
        write!(
            f,
            "observed_actual_use={} pipeline_actual_use={} {verdict}",
            self.observed, self.pipeline
        )
    }
}

/// Evaluates `ledger` and compares its actual use with the simulated count.
pub fn compare_with_pipeline(
    observed_actual_use: &Quantity,
    ledger: &ServiceLedger,
    epsilon: f64,
) -> Result<OracleComparison> {
    let result = evaluate_service(ledger, epsilon)?;
    Ok(OracleComparison {
        observed: observed_actual_use.value(),
        pipeline: result.actual_use.value(),
    })
}
