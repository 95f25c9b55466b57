use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::TemplateId;

use super::registry::{
    check_count, check_probability, sample_count, sample_probability, to_table, ParkService,
    Sample,
};
use super::rng::SimRng;
use super::world::World;

/// Largest number of berries one person can eat in a period.
pub const MAX_CONSUMPTION_CAPACITY: u64 = 1_000;

/// Wild berries picked and eaten by people around an urban park.
///
/// Draw order: per berry (edible, ripe, accessible); per accessible berry,
/// carried out; per outside berry, carried in; per pooled berry, lost in
/// transport; per resident (willing/able, absent); per outsider, visits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WildBerry {
    pub berries: u64,
    pub p_edible: f64,
    pub p_ripe: f64,
    pub p_accessible: f64,
    pub p_carried_out: f64,
    /// Berries outside the park that may be carried in.
    pub outside_berries: u64,
    pub p_carried_in: f64,
    pub p_transport_loss: f64,
    pub residents: u64,
    pub p_willing_able: f64,
    pub p_absent: f64,
    pub outsiders: u64,
    pub p_visit: f64,
    /// Berries one person can eat.
    pub consumption_capacity: u64,
}

impl ParkService for WildBerry {
    fn template(&self) -> TemplateId {
        TemplateId::WildBerry
    }

    fn unit_name(&self) -> &'static str {
        "wild_berries"
    }

    fn sda_name(&self) -> &'static str {
        "walking_distance_communities"
    }

    fn check(&self) -> Result<()> {
        check_count("berries", self.berries)?;
        check_count("outside_berries", self.outside_berries)?;
        check_count("residents", self.residents)?;
        check_count("outsiders", self.outsiders)?;
        for (name, p) in [
            ("p_edible", self.p_edible),
            ("p_ripe", self.p_ripe),
            ("p_accessible", self.p_accessible),
            ("p_carried_out", self.p_carried_out),
            ("p_carried_in", self.p_carried_in),
            ("p_transport_loss", self.p_transport_loss),
            ("p_willing_able", self.p_willing_able),
            ("p_absent", self.p_absent),
            ("p_visit", self.p_visit),
        ] {
            check_probability(name, p)?;
        }
        if self.consumption_capacity > MAX_CONSUMPTION_CAPACITY {
            return Err(Error::InvalidScenario(format!(
                "consumption_capacity must be at most {MAX_CONSUMPTION_CAPACITY}"
            )));
        }
        Ok(())
    }

    fn populate(&self, rng: &mut SimRng, world: &mut World) {
        for berry in 0..self.berries {
            let edible = rng.chance(self.p_edible);
            let ripe = rng.chance(self.p_ripe);
            let accessible = rng.chance(self.p_accessible);
            match (edible, ripe) {
                (true, true) => {
                    world.local_unit(berry, accessible);
                }
                (false, true) => world.exclude(berry, "inedible"),
                (true, false) => world.exclude(berry, "unripe"),
                (false, false) => world.exclude(berry, "inedible and unripe"),
            }
        }
        for unit in world.available_units() {
            if rng.chance(self.p_carried_out) {
                world.export(unit);
            }
        }
        for outside in 0..self.outside_berries {
            if rng.chance(self.p_carried_in) {
                world.imported_unit(self.berries + outside);
            }
        }
        for unit in world.available_units() {
            if rng.chance(self.p_transport_loss) {
                world.lose(unit);
            }
        }
        for _ in 0..self.residents {
            let willing = rng.chance(self.p_willing_able);
            let absent = rng.chance(self.p_absent);
            world.resident(self.consumption_capacity, willing, absent);
        }
        for _ in 0..self.outsiders {
            if rng.chance(self.p_visit) {
                world.visitor(self.consumption_capacity);
            }
        }
    }

    fn params(&self) -> toml::Table {
        to_table(self)
    }
}

impl Sample for WildBerry {
    fn sample(rng: &mut SimRng, max_entities: u64) -> Self {
        Self {
            berries: sample_count(rng, max_entities),
            p_edible: sample_probability(rng),
            p_ripe: sample_probability(rng),
            p_accessible: sample_probability(rng),
            p_carried_out: sample_probability(rng),
            outside_berries: sample_count(rng, max_entities),
            p_carried_in: sample_probability(rng),
            p_transport_loss: sample_probability(rng),
            residents: sample_count(rng, max_entities / 10),
            p_willing_able: sample_probability(rng),
            p_absent: sample_probability(rng),
            outsiders: sample_count(rng, max_entities / 10),
            p_visit: sample_probability(rng),
            consumption_capacity: rng.below(20),
        }
    }
}
