use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::TemplateId;

use super::registry::{
    check_count, check_probability, sample_count, sample_probability, to_table, ParkService,
    Sample, MAX_ENTITIES,
};
use super::rng::SimRng;
use super::world::World;

/// Park pollinators serving agricultural plants within their foraging range.
///
/// Each pollinator carries `capacity` pollination units (plants it can
/// pollinate). Draw order: per pollinator, active; out-migrants picked among
/// active pollinators by partial Fisher-Yates over `below`; per pooled unit,
/// pollination failure; per plant, at pollination stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Pollination {
    pub pollinators: u64,
    pub p_active: f64,
    /// Active pollinators leaving the range (capped at the active count).
    pub out_migrants: u64,
    pub in_migrants: u64,
    /// Plants one pollinator can pollinate.
    pub capacity: u64,
    pub plants: u64,
    pub p_pollination_stage: f64,
    pub p_failure: f64,
}

impl ParkService for Pollination {
    fn template(&self) -> TemplateId {
        TemplateId::Pollination
    }

    fn unit_name(&self) -> &'static str {
        "agricultural_plants"
    }

    fn sda_name(&self) -> &'static str {
        "max_pollination_range"
    }

    // plants inside the park belong to both areas
    fn overlap_flag(&self) -> bool {
        true
    }

    fn check(&self) -> Result<()> {
        check_count("pollinators", self.pollinators)?;
        check_count("in_migrants", self.in_migrants)?;
        check_count("plants", self.plants)?;
        check_count(
            "pollinators * capacity",
            self.pollinators.saturating_mul(self.capacity),
        )?;
        check_count(
            "in_migrants * capacity",
            self.in_migrants.saturating_mul(self.capacity),
        )?;
        if self.out_migrants > self.pollinators {
            return Err(Error::InvalidScenario(format!(
                "out_migrants = {} exceeds pollinators = {}",
                self.out_migrants, self.pollinators
            )));
        }
        check_probability("p_active", self.p_active)?;
        check_probability("p_pollination_stage", self.p_pollination_stage)?;
        check_probability("p_failure", self.p_failure)?;
        Ok(())
    }

    fn populate(&self, rng: &mut SimRng, world: &mut World) {
        let mut active = Vec::new();
        for pollinator in 0..self.pollinators {
            let is_active = rng.chance(self.p_active);
            let units: Vec<u64> = (0..self.capacity)
                .map(|_| world.local_unit(pollinator, is_active))
                .collect();
            if is_active {
                active.push(units);
            }
        }

        let leaving = (self.out_migrants as usize).min(active.len());
        for i in 0..leaving {
            let j = i + rng.below((active.len() - i) as u64) as usize;
            active.swap(i, j);
            for &unit in &active[i] {
                world.export(unit);
            }
        }

        for migrant in 0..self.in_migrants {
            for _ in 0..self.capacity {
                world.imported_unit(self.pollinators + migrant);
            }
        }

        for unit in world.available_units() {
            if rng.chance(self.p_failure) {
                world.lose(unit);
            }
        }

        for _ in 0..self.plants {
            let needs = rng.chance(self.p_pollination_stage);
            world.resident(1, needs, false);
        }
    }

    fn params(&self) -> toml::Table {
        to_table(self)
    }
}

impl Sample for Pollination {
    fn sample(rng: &mut SimRng, max_entities: u64) -> Self {
        let capacity = rng.below(8);
        let per_class = (max_entities / capacity.max(1)).min(MAX_ENTITIES);
        let pollinators = sample_count(rng, per_class);
        Self {
            pollinators,
            p_active: sample_probability(rng),
            out_migrants: sample_count(rng, pollinators),
            in_migrants: sample_count(rng, per_class),
            capacity,
            plants: sample_count(rng, max_entities),
            p_pollination_stage: sample_probability(rng),
            p_failure: sample_probability(rng),
        }
    }
}
