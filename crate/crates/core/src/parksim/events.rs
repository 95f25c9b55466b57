//! Entity-level events emitted by a simulation run.
//!
//! The log is self-describing: a [`SimEvent::Header`] followed by supply
//! units, demanders, flows and consumptions. Every ledger field can be
//! recounted from it (see [`super::replay`]). Logs export as JSON lines.

use std::io::{BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profiles::TemplateId;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    /// Inside the SSA (supply) or resident in the SDA (demand).
    Local,
    /// Arrived from outside during the evaluation.
    External,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum SimEvent {
    Header {
        template: TemplateId,
        service_name: String,
        unit: String,
        period: String,
        ssa: String,
        sda: String,
        overlap_flag: bool,
    },
    /// Surveyed entity that contributes no potential supply.
    Excluded { entity: u64, reason: String },
    /// One service unit of supply, carried by `carrier`.
    SupplyUnit {
        unit: u64,
        carrier: u64,
        origin: Origin,
        active: bool,
    },
    SupplyExported { unit: u64 },
    SupplyLost { unit: u64 },
    /// A demand agent able to use up to `capacity` units.
    Demander {
        agent: u64,
        origin: Origin,
        capacity: u64,
        active: bool,
        absent: bool,
    },
    Consumed { unit: u64, agent: u64 },
}

pub fn write_jsonl<W: Write>(events: &[SimEvent], mut out: W) -> std::io::Result<()> {
    for event in events {
        serde_json::to_writer(&mut out, event)?;
        out.write_all(b"\n")?;
    }
    Ok(())
}

pub fn read_jsonl<R: BufRead>(input: R) -> Result<Vec<SimEvent>> {
    let mut events = Vec::new();
    for (index, line) in input.lines().enumerate() {
        let line = line.map_err(|e| Error::CorruptLog {
            index,
            reason: e.to_string(),
        })?;
        if line.trim().is_empty() {
            continue;
        }
        let event = serde_json::from_str(&line).map_err(|e| Error::CorruptLog {
            index,
            reason: e.to_string(),
        })?;
        events.push(event);
    }
    Ok(events)
}
