//! Multi-service summaries for one region.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::accounting::{EvaluationResult, RealizationType};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tendency {
    MoreSupplyLimited,
    MoreDemandLimited,
    BalancedOverall,
}

impl Tendency {
    pub fn label(self) -> &'static str {
        match self {
            Tendency::MoreSupplyLimited => "More supply-limited",
            Tendency::MoreDemandLimited => "More demand-limited",
            Tendency::BalancedOverall => "Balanced overall",
        }
    }
}

impl fmt::Display for Tendency {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// One included service as it appears in the bundle table.
#[derive(Debug, Clone, PartialEq)]
pub struct BundleRow {
    pub service_name: String,
    pub scr: f64,
    pub dsr: f64,
    pub sdb: f64,
    pub realization: RealizationType,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BundleSummary {
    /// Included services sorted by name.
    pub rows: Vec<BundleRow>,
    pub richness: usize,
    pub mean_scr: f64,
    pub mean_dsr: f64,
    pub mean_sdb: f64,
    pub groups: BTreeMap<RealizationType, Vec<String>>,
    pub tendency: Tendency,
    /// Services whose actual use is zero, sorted.
    pub excluded: Vec<String>,
}

/// Sum in a fixed order so the result does not depend on input order.
fn mean(mut values: Vec<f64>) -> f64 {
    values.sort_by(f64::total_cmp);
    let n = values.len() as f64;
    values.into_iter().sum::<f64>() / n
}

pub fn summarize_bundle(results: &[EvaluationResult], epsilon: f64) -> Result<BundleSummary> {
    let mut rows = Vec::new();
    let mut excluded = Vec::new();

    for r in results {
        let name = r.ledger.service_name.clone();
        match (r.actual_use.value() > 0.0, r.indices.scr, r.indices.dsr) {
            (true, Some(scr), Some(dsr)) => rows.push(BundleRow {
                service_name: name,
                scr,
                dsr,
                sdb: scr - dsr,
                realization: r.realization,
            }),
            _ => excluded.push(name),
        }
    }
    if rows.is_empty() {
        return Err(Error::EmptyBundle);
    }

    rows.sort_by(|a, b| {
        a.service_name
            .cmp(&b.service_name)
            .then(a.scr.total_cmp(&b.scr))
            .then(a.dsr.total_cmp(&b.dsr))
    });
    excluded.sort();

    let mean_scr = mean(rows.iter().map(|r| r.scr).collect());
    let mean_dsr = mean(rows.iter().map(|r| r.dsr).collect());
    let mean_sdb = mean(rows.iter().map(|r| r.sdb).collect());

    let mut groups: BTreeMap<RealizationType, Vec<String>> = BTreeMap::new();
    for row in &rows {
        groups
            .entry(row.realization)
            .or_default()
            .push(row.service_name.clone());
    }

    let tendency = if mean_sdb < -epsilon {
        Tendency::MoreDemandLimited
    } else if mean_sdb > epsilon {
        Tendency::MoreSupplyLimited
    } else {
        Tendency::BalancedOverall
    };

    Ok(BundleSummary {
        richness: rows.len(),
        rows,
        mean_scr,
        mean_dsr,
        mean_sdb,
        groups,
        tendency,
        excluded,
    })
}
