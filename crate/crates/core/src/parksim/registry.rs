//! Name-keyed registry of simulated park services.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::de::DeserializeOwned;

use crate::error::{Error, Result};
use crate::profiles::TemplateId;

use super::rng::SimRng;
use super::world::World;
use super::{pollination::Pollination, recreation::Recreation, wild_berry::WildBerry};

/// Upper bound on entities of any one class in a scenario.
pub const MAX_ENTITIES: u64 = 1_000_000;

/// One simulated service: its parameters and how they turn into entities.
pub trait ParkService: fmt::Debug + Send + Sync {
    fn template(&self) -> TemplateId;

    fn unit_name(&self) -> &'static str;

    fn sda_name(&self) -> &'static str;

    fn overlap_flag(&self) -> bool {
        false
    }

    /// Rejects out-of-range parameters.
    fn check(&self) -> Result<()>;

    /// Emits every entity into `world`, drawing from `rng` in a fixed order.
    fn populate(&self, rng: &mut SimRng, world: &mut World);

    fn params(&self) -> toml::Table;
}

type ParseFn = fn(toml::Table) -> Result<Arc<dyn ParkService>>;
type SampleFn = fn(&mut SimRng, u64) -> Arc<dyn ParkService>;

#[derive(Clone, Copy)]
struct Entry {
    parse: ParseFn,
    sample: SampleFn,
}

/// Maps template names to parameter parsers and random samplers.
#[derive(Clone, Default)]
pub struct Registry {
    entries: BTreeMap<&'static str, Entry>,
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.entries.keys()).finish()
    }
}

fn parse_as<T>(table: toml::Table) -> Result<Arc<dyn ParkService>>
where
    T: ParkService + DeserializeOwned + 'static,
{
    let params: T = toml::Value::Table(table)
        .try_into()
        .map_err(|e: toml::de::Error| Error::InvalidScenario(e.message().to_string()))?;
    params.check()?;
    Ok(Arc::new(params))
}

/// Random parameter sets, used for oracle sweeps.
pub trait Sample: Sized {
    fn sample(rng: &mut SimRng, max_entities: u64) -> Self;
}

fn sample_as<T>(rng: &mut SimRng, max_entities: u64) -> Arc<dyn ParkService>
where
    T: ParkService + Sample + 'static,
{
    Arc::new(T::sample(rng, max_entities))
}

impl Registry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn builtin() -> Self {
        let mut r = Self::empty();
        r.register::<WildBerry>(TemplateId::WildBerry.name());
        r.register::<Pollination>(TemplateId::Pollination.name());
        r.register::<Recreation>(TemplateId::Recreation.name());
        r
    }

    pub fn register<T>(&mut self, name: &'static str)
    where
        T: ParkService + DeserializeOwned + Sample + 'static,
    {
        self.entries.insert(
            name,
            Entry {
                parse: parse_as::<T>,
                sample: sample_as::<T>,
            },
        );
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.keys().copied()
    }

    fn entry(&self, name: &str) -> Result<Entry> {
        self.entries
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownTemplate(name.to_string()))
    }

    pub fn parse(&self, name: &str, params: toml::Table) -> Result<Arc<dyn ParkService>> {
        (self.entry(name)?.parse)(params)
    }

    pub fn sample(
        &self,
        name: &str,
        rng: &mut SimRng,
        max_entities: u64,
    ) -> Result<Arc<dyn ParkService>> {
        Ok((self.entry(name)?.sample)(rng, max_entities))
    }
}

pub(crate) fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidScenario(format!(
            "{name} must be a probability in [0, 1], got {p}"
        )))
    }
}

pub(crate) fn check_count(name: &str, n: u64) -> Result<()> {
    if n <= MAX_ENTITIES {
        Ok(())
    } else {
        Err(Error::InvalidScenario(format!(
            "{name} = {n} exceeds the entity cap of {MAX_ENTITIES}"
        )))
    }
}

/// Probability for sampled scenarios, with the 0 and 1 edges drawn often.
pub(crate) fn sample_probability(rng: &mut SimRng) -> f64 {
    match rng.below(10) {
        0 => 0.0,
        1 => 1.0,
        _ => rng.unit_f64(),
    }
}

/// Count for sampled scenarios in `0..=max`, with zero drawn often.
pub(crate) fn sample_count(rng: &mut SimRng, max: u64) -> u64 {
    if rng.below(10) == 0 {
        0
    } else {
        rng.below(max + 1)
    }
}

/// Serializes a parameter struct into a TOML table.
pub(crate) fn to_table<T: serde::Serialize>(params: &T) -> toml::Table {
    toml::Table::try_from(params).expect("parameter structs serialize to tables")
}
