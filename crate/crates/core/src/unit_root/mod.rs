//! Augmented Dickey-Fuller and Phillips-Perron unit-root tests.

mod adf;
mod critical;
mod pp;
mod report;

pub use adf::{adf_test, adf_test_auto, adf_with_source, integration_order};
pub use critical::{
    critical_values, dickey_fuller_critical, mackinnon_pvalue, CriticalSource, CriticalValues,
    Statistic,
};
pub use pp::{pp_test, pp_with_source, Bandwidth};
pub use report::{render_markdown, significance_stars, TestKind, UnitRootReport, STAR_NOTE};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Deterministic terms in the test regression.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Deterministic {
    None,
    Constant,
    ConstantTrend,
}

impl Deterministic {
    pub(crate) fn index(self) -> usize {
        match self {
            Deterministic::None => 0,
            Deterministic::Constant => 1,
            Deterministic::ConstantTrend => 2,
        }
    }

    pub(crate) fn regressors(self) -> usize {
        self.index()
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Deterministic::None => "none",
            Deterministic::Constant => "constant",
            Deterministic::ConstantTrend => "constant+trend",
        }
    }
}

impl fmt::Display for Deterministic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Deterministic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" | "n" => Ok(Deterministic::None),
            "constant" | "c" => Ok(Deterministic::Constant),
            "constant+trend" | "trend" | "ct" => Ok(Deterministic::ConstantTrend),
            other => Err(Error::Parameter(format!("unknown deterministic spec `{other}`"))),
        }
    }
}

/// The three tabulated test sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SignificanceLevel {
    #[serde(rename = "1%")]
    One,
    #[serde(rename = "5%")]
    Five,
    #[serde(rename = "10%")]
    Ten,
}

impl SignificanceLevel {
    pub const ALL: [SignificanceLevel; 3] = [Self::One, Self::Five, Self::Ten];

    pub fn as_fraction(self) -> f64 {
        match self {
            Self::One => 0.01,
            Self::Five => 0.05,
            Self::Ten => 0.10,
        }
    }
}

impl TryFrom<f64> for SignificanceLevel {
    type Error = Error;

    fn try_from(level: f64) -> Result<Self> {
        // accept fractions or percentages
        let level = if level >= 1.0 { level / 100.0 } else { level };
        Self::ALL
            .into_iter()
            .find(|l| (l.as_fraction() - level).abs() < 1e-9)
            .ok_or_else(|| Error::Parameter(format!("unsupported significance level {level}")))
    }
}
