//! Development-status arithmetic on forecast series and the composed
//! multi-indicator scenario.

mod pipeline;
mod report;

pub use pipeline::{run_scenario, IndicatorSpec, MacroScenario, ModelChoice};
pub use report::{DevelopedTarget, IndicatorOutcome, ScenarioReport};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Unit};

/// Upper bound of the upper-middle band, US$ per capita (Atlas method).
pub const HIGH_INCOME_THRESHOLD: f64 = 14005.0;
pub const LOWER_MIDDLE_FLOOR: f64 = 1146.0;
pub const LOWER_MIDDLE_CAP: f64 = 4515.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IncomeBand {
    Low,
    LowerMiddle,
    UpperMiddle,
    High,
}

impl IncomeBand {
    pub fn as_str(self) -> &'static str {
        match self {
            IncomeBand::Low => "low",
            IncomeBand::LowerMiddle => "lower-middle",
            IncomeBand::UpperMiddle => "upper-middle",
            IncomeBand::High => "high",
        }
    }
}

impl fmt::Display for IncomeBand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IncomeBand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [IncomeBand::Low, IncomeBand::LowerMiddle, IncomeBand::UpperMiddle, IncomeBand::High]
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| Error::Parameter(format!("unknown income band `{s}`")))
    }
}

/// Quoted ranges are inclusive: 1146 and 4515 are lower-middle, 14005 is
/// upper-middle. Values strictly between 4515 and 4516 fall to upper-middle.
pub fn classify_income(gni_per_capita: f64) -> Result<IncomeBand> {
    if !(gni_per_capita > 0.0) || !gni_per_capita.is_finite() {
        return Err(Error::Parameter(format!("GNI per capita must be positive, got {gni_per_capita}")));
    }
    Ok(if gni_per_capita < LOWER_MIDDLE_FLOOR {
        IncomeBand::Low
    } else if gni_per_capita <= LOWER_MIDDLE_CAP {
        IncomeBand::LowerMiddle
    } else if gni_per_capita <= HIGH_INCOME_THRESHOLD {
        IncomeBand::UpperMiddle
    } else {
        IncomeBand::High
    })
}

fn overlap(a: &AnnualSeries, b: &AnnualSeries) -> Result<(i32, i32)> {
    let start = a.first_year().max(b.first_year());
    let end = a.last_year().min(b.last_year());
    if start > end {
        return Err(Error::EmptyOverlap {
            left: a.name().to_string(),
            right: b.name().to_string(),
        });
    }
    Ok((start, end))
}

fn combine(
    a: &AnnualSeries,
    b: &AnnualSeries,
    name: String,
    unit: Unit,
    op: impl Fn(f64, f64) -> f64,
    reject: impl Fn(f64) -> bool,
) -> Result<AnnualSeries> {
    let (start, end) = overlap(a, b)?;
    let mut values = Vec::with_capacity((end - start + 1) as usize);
    for year in start..=end {
        let (x, y) = (a.value_at(year).expect("in overlap"), b.value_at(year).expect("in overlap"));
        if reject(y) {
            return Err(Error::ZeroDenominator(year));
        }
        values.push(op(x, y));
    }
    let provenance = format!("derived from {} and {}", a.name(), b.name());
    AnnualSeries::new(name, unit, start, values, provenance)
}

/// Local-currency crore divided by the rupees-per-dollar rate, giving US$
/// crore over the overlapping years.
pub fn convert_currency(local: &AnnualSeries, fx: &AnnualSeries) -> Result<AnnualSeries> {
    combine(local, fx, format!("{}_usd", local.name()), Unit::UsdCrore, |g, r| g / r, |r| r <= 0.0)
}

/// `100 · numerator / denominator` over the overlapping years.
pub fn ratio_series(numerator: &AnnualSeries, denominator: &AnnualSeries) -> Result<AnnualSeries> {
    combine(
        numerator,
        denominator,
        format!("{}_pct_{}", numerator.name(), denominator.name()),
        Unit::Percent,
        |n, d| 100.0 * n / d,
        |d| d == 0.0,
    )
}

fn positive(label: &str, v: f64) -> Result<()> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!("{label} must be positive, got {v}")))
    }
}

/// Compound annual growth rate `(end/start)^(1/years) − 1`.
pub fn cagr(start: f64, end: f64, years: u32) -> Result<f64> {
    positive("start value", start)?;
    positive("end value", end)?;
    if years == 0 {
        return Err(Error::Parameter("growth horizon must be at least one year".into()));
    }
    Ok((end / start).powf(1.0 / years as f64) - 1.0)
}

/// Annual growth needed to move from `current` to `threshold` in `years`.
/// Negative when the threshold is already exceeded.
pub fn required_growth(current: f64, threshold: f64, years: u32) -> Result<f64> {
    cagr(current, threshold, years)
}
