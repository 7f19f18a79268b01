//! Annual observation series and the bundled dataset catalog.

mod catalog;
mod csv;
mod fetch;

pub use catalog::{Catalog, CatalogEntry, DATA_DIR_ENV};
pub use csv::{load_csv, parse_csv, save_csv, to_csv_string};
pub use fetch::{fetch_indicator, parse_payload, IndicatorSource};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Measurement unit of an annual series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unit {
    RupeeCrore,
    Usd,
    /// US$ crore (10^7 dollars), the unit of rupee-crore values converted at
    /// a rupees-per-dollar rate.
    UsdCrore,
    RupeesPerUsd,
    UsdPerCapita,
    Percent,
}

impl Unit {
    pub fn as_str(self) -> &'static str {
        match self {
            Unit::RupeeCrore => "rupee-crore",
            Unit::Usd => "usd",
            Unit::UsdCrore => "usd-crore",
            Unit::RupeesPerUsd => "rupees-per-usd",
            Unit::UsdPerCapita => "usd-per-capita",
            Unit::Percent => "percent",
        }
    }
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Unit {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "rupee-crore" => Unit::RupeeCrore,
            "usd" => Unit::Usd,
            "usd-crore" => Unit::UsdCrore,
            "rupees-per-usd" => Unit::RupeesPerUsd,
            "usd-per-capita" => Unit::UsdPerCapita,
            "percent" => Unit::Percent,
            other => return Err(Error::Parameter(format!("unknown unit `{other}`"))),
        })
    }
}

/// Consecutive annual observations of one indicator.
///
/// The year of `values[i]` is `first_year + i`. Construction validates that
/// the series is non-empty and every value is finite, so downstream code can
/// rely on both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnualSeries {
    name: String,
    unit: Unit,
    /// Differencing order applied to the original observations.
    #[serde(default)]
    diff_order: usize,
    first_year: i32,
    values: Vec<f64>,
    provenance: String,
}

impl AnnualSeries {
    pub fn new(
        name: impl Into<String>,
        unit: Unit,
        first_year: i32,
        values: Vec<f64>,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSeries("series has no observations".into()));
        }
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidSeries(format!(
                "non-finite value for year {}",
                first_year + i as i32
            )));
        }
        Ok(Self {
            name: name.into(),
            unit,
            diff_order: 0,
            first_year,
            values,
            provenance: provenance.into(),
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn unit(&self) -> Unit {
        self.unit
    }

    pub fn diff_order(&self) -> usize {
        self.diff_order
    }

    /// Unit label including the differencing annotation, e.g. `Δ^1 rupees-per-usd`.
    pub fn unit_label(&self) -> String {
        if self.diff_order == 0 {
            self.unit.to_string()
        } else {
            format!("Δ^{} {}", self.diff_order, self.unit)
        }
    }

    pub fn first_year(&self) -> i32 {
        self.first_year
    }

    pub fn last_year(&self) -> i32 {
        self.first_year + self.values.len() as i32 - 1
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.values.len()).map(move |i| self.first_year + i as i32)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.years().zip(self.values.iter().copied())
    }

    pub fn value_at(&self, year: i32) -> Option<f64> {
        if year < self.first_year {
            return None;
        }
        self.values.get((year - self.first_year) as usize).copied()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_provenance(mut self, provenance: impl Into<String>) -> Self {
        self.provenance = provenance.into();
        self
    }

    pub(crate) fn with_diff_order(mut self, d: usize) -> Self {
        self.diff_order = d;
        self
    }

    /// Sub-series covering exactly `[start, end]`.
    pub fn slice(&self, start: i32, end: i32) -> Result<AnnualSeries> {
        if start > end || start < self.first_year || end > self.last_year() {
            return Err(Error::Range {
                start,
                end,
                first: self.first_year,
                last: self.last_year(),
            });
        }
        let lo = (start - self.first_year) as usize;
        let hi = (end - self.first_year) as usize;
        Ok(AnnualSeries {
            values: self.values[lo..=hi].to_vec(),
            first_year: start,
            ..self.clone()
        })
    }

    /// Appends values for the years following `last_year`.
    pub fn extended(&self, more: &[f64]) -> Result<AnnualSeries> {
        let mut values = self.values.clone();
        values.extend_from_slice(more);
        let s = AnnualSeries::new(
            self.name.clone(),
            self.unit,
            self.first_year,
            values,
            self.provenance.clone(),
        )?;
        Ok(s.with_diff_order(self.diff_order))
    }
}
