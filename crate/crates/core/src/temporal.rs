//! Multi-period evaluation of one service, trend labels and regime shifts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::accounting::{evaluate_service, EvaluationResult, RealizationType, ServiceLedger};
use crate::error::{Error, Result};

/// Relative change at or below which a quantity is considered stable.
pub const STABLE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
pub struct EvaluationSeries {
    pub service_name: String,
    pub entries: Vec<(String, EvaluationResult)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeShift {
    pub from_period: String,
    pub to_period: String,
    pub from_type: RealizationType,
    pub to_type: RealizationType,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Stable,
}

impl fmt::Display for Trend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Trend::Increasing => "increasing",
            Trend::Decreasing => "decreasing",
            Trend::Stable => "stable",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrendLabels {
    pub available_actual_supply: Trend,
    pub actual_demand: Trend,
}

pub fn evaluate_series(ledgers: &[ServiceLedger], epsilon: f64) -> Result<EvaluationSeries> {
    let Some(first) = ledgers.first() else {
        return Ok(EvaluationSeries {
            service_name: String::new(),
            entries: Vec::new(),
        });
    };

    for pair in ledgers.windows(2) {
        let (prev, next) = (&pair[0], &pair[1]);
        if next.period <= prev.period {
            return Err(Error::UnorderedPeriods {
                previous: prev.period.clone(),
                next: next.period.clone(),
            });
        }
    }
    for ledger in ledgers {
        if ledger.service_name != first.service_name || ledger.unit != first.unit {
            return Err(Error::MixedServices {
                expected: format!("{} [{}]", first.service_name, first.unit),
                found: format!("{} [{}]", ledger.service_name, ledger.unit),
            });
        }
    }

    let entries = ledgers
        .iter()
        .map(|ledger| {
            let result = evaluate_service(ledger, epsilon).map_err(|e| match e {
                Error::ValidationFailed(report) => Error::PeriodValidationFailed {
                    period: ledger.period.clone(),
                    report,
                },
                other => other,
            })?;
            Ok((ledger.period.clone(), result))
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(EvaluationSeries {
        service_name: first.service_name.clone(),
        entries,
    })
}

pub fn detect_regime_shifts(series: &EvaluationSeries) -> Vec<RegimeShift> {
    series
        .entries
        .windows(2)
        .filter(|w| w[0].1.realization != w[1].1.realization)
        .map(|w| RegimeShift {
            from_period: w[0].0.clone(),
            to_period: w[1].0.clone(),
            from_type: w[0].1.realization,
            to_type: w[1].1.realization,
        })
        .collect()
}

fn endpoint_trend(first: f64, last: f64) -> Trend {
    let scale = first.abs().max(last.abs());
    if scale == 0.0 || (last - first).abs() <= STABLE_TOLERANCE * scale {
        Trend::Stable
    } else if last > first {
        Trend::Increasing
    } else {
        Trend::Decreasing
    }
}

/// Compares the last period against the first.
pub fn trend_labels(series: &EvaluationSeries) -> Result<TrendLabels> {
    let n = series.entries.len();
    if n < 2 {
        return Err(Error::TooShort(n));
    }
    let (first, last) = (&series.entries[0].1, &series.entries[n - 1].1);
    Ok(TrendLabels {
        available_actual_supply: endpoint_trend(
            first.supply.available_actual.value(),
            last.supply.available_actual.value(),
        ),
        actual_demand: endpoint_trend(first.demand.actual.value(), last.demand.actual.value()),
    })
}
