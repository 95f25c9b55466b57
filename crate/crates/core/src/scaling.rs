//! Linear area-to-service relationships and balanced area sizes.
//!
//! Supply grows as `supply_slope * ssa_area` and demand as
//! `demand_slope * sda_area`. For a given SSA there is one SDA size whose
//! demand matches the SSA's supply, and vice versa. Comparing the two slopes
//! tells which of the two balanced areas is larger.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quantities::{Quantity, ServiceUnit};

/// Relative tolerance for treating two slopes as equal.
pub const SLOPE_EQ_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct AreaEsModel {
    supply_slope: f64,
    demand_slope: f64,
    area_unit: String,
    unit: ServiceUnit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScalingScenario {
    /// Balanced SSA larger than its SDA.
    S1,
    /// Balanced SSA and SDA equal.
    S2,
    /// Balanced SSA smaller than its SDA.
    S3,
}

impl ScalingScenario {
    pub fn description(self) -> &'static str {
        match self {
            ScalingScenario::S1 => "SSA > SDA",
            ScalingScenario::S2 => "SSA = SDA",
            ScalingScenario::S3 => "SSA < SDA",
        }
    }
}

impl fmt::Display for ScalingScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

fn check_slope(slope: f64) -> Result<f64> {
    if slope.is_finite() && slope > 0.0 {
        Ok(slope)
    } else {
        Err(Error::InvalidSlope(slope))
    }
}

fn check_area(area: f64) -> Result<f64> {
    if area.is_finite() && area >= 0.0 {
        Ok(area)
    } else {
        Err(Error::NegativeArea(area))
    }
}

impl AreaEsModel {
    pub fn new(
        supply_slope: f64,
        demand_slope: f64,
        area_unit: impl Into<String>,
        unit: ServiceUnit,
    ) -> Result<Self> {
        Ok(Self {
            supply_slope: check_slope(supply_slope)?,
            demand_slope: check_slope(demand_slope)?,
            area_unit: area_unit.into(),
            unit,
        })
    }

    pub fn supply_slope(&self) -> f64 {
        self.supply_slope
    }

    pub fn demand_slope(&self) -> f64 {
        self.demand_slope
    }

    pub fn area_unit(&self) -> &str {
        &self.area_unit
    }

    pub fn unit(&self) -> &ServiceUnit {
        &self.unit
    }
}

pub fn supply_at(model: &AreaEsModel, ssa_area: f64) -> Result<Quantity> {
    Quantity::new(model.supply_slope * check_area(ssa_area)?, model.unit.clone())
}

pub fn demand_at(model: &AreaEsModel, sda_area: f64) -> Result<Quantity> {
    Quantity::new(model.demand_slope * check_area(sda_area)?, model.unit.clone())
}

/// SDA area whose demand equals the supply of an SSA of `ssa_area`.
pub fn balanced_sda_area(model: &AreaEsModel, ssa_area: f64) -> Result<f64> {
    Ok(check_area(ssa_area)? * (model.supply_slope / model.demand_slope))
}

/// SSA area whose supply equals the demand of an SDA of `sda_area`.
pub fn balanced_ssa_area(model: &AreaEsModel, sda_area: f64) -> Result<f64> {
    Ok(check_area(sda_area)? * (model.demand_slope / model.supply_slope))
}

pub fn classify_scenario(model: &AreaEsModel) -> ScalingScenario {
    let (s, d) = (model.supply_slope, model.demand_slope);
    if (s - d).abs() <= SLOPE_EQ_TOLERANCE * s.max(d) {
        ScalingScenario::S2
    } else if s < d {
        ScalingScenario::S1
    } else {
        ScalingScenario::S3
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn model(s: f64, d: f64) -> AreaEsModel {
        AreaEsModel::new(s, d, "ha", ServiceUnit::new("people").unwrap()).unwrap()
    }

    #[test]
    fn supply_at_values() {
        assert_eq!(supply_at(&model(2.0, 1.0), 10.0).unwrap().value(), 20.0);
        assert_eq!(supply_at(&model(3.7, 1.0), 0.0).unwrap().value(), 0.0);
        assert!(matches!(
            supply_at(&model(2.0, 1.0), -1.0),
            Err(Error::NegativeArea(_))
        ));
    }

    #[test]
    fn balanced_areas() {
        // 2 * 10 = 1 * A
        assert_eq!(balanced_sda_area(&model(2.0, 1.0), 10.0).unwrap(), 20.0);
        assert_eq!(balanced_sda_area(&model(1.5, 1.5), 7.25).unwrap(), 7.25);
        // 1 * 10 = 2 * A
        assert_eq!(balanced_sda_area(&model(1.0, 2.0), 10.0).unwrap(), 5.0);
        assert_eq!(balanced_ssa_area(&model(2.0, 1.0), 20.0).unwrap(), 10.0);
        assert_eq!(balanced_ssa_area(&model(0.3, 0.3), 4.0).unwrap(), 4.0);
        assert_eq!(balanced_ssa_area(&model(2.0, 1.0), 0.0).unwrap(), 0.0);
        assert!(balanced_ssa_area(&model(2.0, 1.0), -3.0).is_err());
    }

    #[test]
    fn scenarios() {
        assert_eq!(classify_scenario(&model(1.0, 2.0)), ScalingScenario::S1);
        assert_eq!(classify_scenario(&model(1.5, 1.5)), ScalingScenario::S2);
        assert_eq!(classify_scenario(&model(2.0, 1.0)), ScalingScenario::S3);
    }

    #[test]
    fn slopes_must_be_positive() {
        let u = ServiceUnit::new("people").unwrap();
        assert!(AreaEsModel::new(0.0, 1.0, "ha", u.clone()).is_err());
        assert!(AreaEsModel::new(1.0, -1.0, "ha", u.clone()).is_err());
        assert!(AreaEsModel::new(f64::NAN, 1.0, "ha", u).is_err());
    }

    proptest! {
        #[test]
        fn round_trip_and_balance(s in 1e-3f64..1e3, d in 1e-3f64..1e3, area in 0.0f64..1e6) {
            let m = model(s, d);
            let sda = balanced_sda_area(&m, area).unwrap();
            let back = balanced_ssa_area(&m, sda).unwrap();
            prop_assert!((back - area).abs() <= 1e-9 * area);
            let supply = supply_at(&m, area).unwrap().value();
            let demand = demand_at(&m, sda).unwrap().value();
            prop_assert!((supply - demand).abs() <= 1e-9 * supply);
        }

        #[test]
        fn scenario_matches_balance_point(s in 1e-3f64..1e3, d in 1e-3f64..1e3, area in 1e-3f64..1e6) {
            let m = model(s, d);
            let sda = balanced_sda_area(&m, area).unwrap();
            let expected = match classify_scenario(&m) {
                ScalingScenario::S1 => sda < area,
                ScalingScenario::S2 => (sda - area).abs() <= 1e-9 * area,
                ScalingScenario::S3 => sda > area,
            };
            prop_assert!(expected);
        }
    }
}
