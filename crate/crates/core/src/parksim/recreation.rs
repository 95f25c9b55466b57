use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::profiles::TemplateId;

use super::registry::{
    check_count, check_probability, sample_count, sample_probability, to_table, ParkService,
    Sample,
};
use super::rng::SimRng;
use super::world::World;

/// In-situ recreation: visiting slots in the park, people from the
/// surrounding communities and outside visitors.
///
/// Draw order: per slot, accessible; per resident (willing/able, absent).
/// Outsiders are a fixed count and draw nothing.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Recreation {
    /// Visiting capacity of the whole park, in people.
    pub capacity: u64,
    /// Share of the park that is accessible and preferable.
    pub p_accessible: f64,
    pub residents: u64,
    pub p_willing_able: f64,
    /// Willing residents recreating elsewhere.
    pub p_absent: f64,
    pub outsiders: u64,
}

impl ParkService for Recreation {
    fn template(&self) -> TemplateId {
        TemplateId::Recreation
    }

    fn unit_name(&self) -> &'static str {
        "people"
    }

    fn sda_name(&self) -> &'static str {
        "walking_distance_communities"
    }

    fn check(&self) -> Result<()> {
        check_count("capacity", self.capacity)?;
        check_count("residents", self.residents)?;
        check_count("outsiders", self.outsiders)?;
        check_probability("p_accessible", self.p_accessible)?;
        check_probability("p_willing_able", self.p_willing_able)?;
        check_probability("p_absent", self.p_absent)?;
        Ok(())
    }

    fn populate(&self, rng: &mut SimRng, world: &mut World) {
        for slot in 0..self.capacity {
            let accessible = rng.chance(self.p_accessible);
            world.local_unit(slot, accessible);
        }
        for _ in 0..self.residents {
            let willing = rng.chance(self.p_willing_able);
            let absent = rng.chance(self.p_absent);
            world.resident(1, willing, absent);
        }
        for _ in 0..self.outsiders {
            world.visitor(1);
        }
    }

    fn params(&self) -> toml::Table {
        to_table(self)
    }
}

impl Sample for Recreation {
    fn sample(rng: &mut SimRng, max_entities: u64) -> Self {
        Self {
            capacity: sample_count(rng, max_entities),
            p_accessible: sample_probability(rng),
            residents: sample_count(rng, max_entities),
            p_willing_able: sample_probability(rng),
            p_absent: sample_probability(rng),
            outsiders: sample_count(rng, max_entities / 4),
        }
    }
}
