//! Unit-tagged, non-negative quantities.
//!
//! Every stock, flow and loss in a ledger is a [`Quantity`]: a finite,
//! non-negative real number carrying its [`ServiceUnit`]. Arithmetic between
//! quantities of different units is rejected, and subtraction never clamps.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Native unit of one service, e.g. `wild_berries` or `people`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ServiceUnit(Arc<str>);

impl ServiceUnit {
    pub fn new(name: impl AsRef<str>) -> Result<Self> {
        let name = name.as_ref();
        if name.trim().is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(Self(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ServiceUnit {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        Self::new(value)
    }
}

impl From<ServiceUnit> for String {
    fn from(unit: ServiceUnit) -> Self {
        unit.0.to_string()
    }
}

impl fmt::Display for ServiceUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RegionKind {
    #[serde(rename = "SSA")]
    Supply,
    #[serde(rename = "SDA")]
    Demand,
}

/// Identifier of a service supply area or service demand area.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RegionRef {
    id: String,
    kind: RegionKind,
}

impl RegionRef {
    pub fn new(id: impl Into<String>, kind: RegionKind) -> Result<Self> {
        let id = id.into();
        if id.trim().is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(Self { id, kind })
    }

    pub fn ssa(id: impl Into<String>) -> Result<Self> {
        Self::new(id, RegionKind::Supply)
    }

    pub fn sda(id: impl Into<String>) -> Result<Self> {
        Self::new(id, RegionKind::Demand)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn kind(&self) -> RegionKind {
        self.kind
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Quantity {
    value: f64,
    unit: ServiceUnit,
}

impl Quantity {
    pub fn new(value: f64, unit: ServiceUnit) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::InvalidQuantity(value));
        }
        // normalise -0.0 so bit-level comparisons of results stay stable
        Ok(Self {
            value: value + 0.0,
            unit,
        })
    }

    pub fn zero(unit: ServiceUnit) -> Self {
        Self { value: 0.0, unit }
    }

    pub fn value(&self) -> f64 {
        self.value
    }

    pub fn unit(&self) -> &ServiceUnit {
        &self.unit
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0.0
    }

    fn check_unit(&self, other: &Quantity) -> Result<()> {
        if self.unit != other.unit {
            return Err(Error::UnitMismatch {
                left: self.unit.to_string(),
                right: other.unit.to_string(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Quantity) -> Result<Quantity> {
        self.check_unit(other)?;
        Quantity::new(self.value + other.value, self.unit.clone())
    }

    /// Subtracts `other`, failing with [`Error::InsufficientBalance`] rather
    /// than going negative.
    pub fn checked_sub(&self, other: &Quantity) -> Result<Quantity> {
        self.check_unit(other)?;
        if other.value > self.value {
            return Err(Error::InsufficientBalance {
                available: self.value,
                requested: other.value,
            });
        }
        Quantity::new(self.value - other.value, self.unit.clone())
    }

    /// The smaller of two same-unit quantities.
    pub fn min(&self, other: &Quantity) -> Result<Quantity> {
        self.check_unit(other)?;
        Ok(if other.value < self.value {
            other.clone()
        } else {
            self.clone()
        })
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

pub fn qty_add(a: &Quantity, b: &Quantity) -> Result<Quantity> {
    a.checked_add(b)
}

pub fn qty_sub(a: &Quantity, b: &Quantity) -> Result<Quantity> {
    a.checked_sub(b)
}
