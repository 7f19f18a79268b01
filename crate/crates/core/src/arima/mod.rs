//! ARIMA(p,d,q) estimation, order selection and forecasting.
//!
//! Models are fitted to the `d`-th difference `w_t` of the series,
//! conditioning on the first `d` observations:
//!
//! ```text
//! φ(B)(w_t − μ) = θ(B) ε_t,   ε_t ~ N(0, σ²)
//! ```
//!
//! where `μ` is present only when drift is on (for `d = 0` it is the mean).
//! The parameter count used by AIC/BIC is `p + q + drift + 1`, with σ²
//! counted.

mod css;
mod fit;
mod forecast;
mod kalman;
mod optim;
mod poly;
mod select;

pub use fit::{exact_log_likelihood, fit, fit_with, information_criteria, ArimaFit, FitOptions};
pub use forecast::{forecast, forecast_with, ForecastRow, ForecastTable, IntervalVariance};
pub use poly::{is_invertible, is_stationary, psi_weights};
pub use select::{
    auto_select, evaluate_candidates, grid_search, AutoSelection, Candidate, DriftPolicy,
    FitStatus, GridBounds, GridResult,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ArimaOrder {
    pub p: usize,
    pub d: usize,
    pub q: usize,
}

impl ArimaOrder {
    pub const MAX_P: usize = 5;
    pub const MAX_D: usize = 2;
    pub const MAX_Q: usize = 5;

    pub fn new(p: usize, d: usize, q: usize) -> Result<Self> {
        if p > Self::MAX_P || d > Self::MAX_D || q > Self::MAX_Q {
            return Err(Error::Parameter(format!(
                "order ({p},{d},{q}) exceeds ceilings ({},{},{})",
                Self::MAX_P,
                Self::MAX_D,
                Self::MAX_Q
            )));
        }
        Ok(Self { p, d, q })
    }
}

impl fmt::Display for ArimaOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.d, self.q)
    }
}

impl FromStr for ArimaOrder {
    type Err = Error;

    /// Parses `p,d,q`, optionally wrapped in parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || Error::Parameter(format!("invalid order `{s}`, expected p,d,q"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let nums: Vec<usize> = parts
            .iter()
            .map(|p| p.parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        ArimaOrder::new(nums[0], nums[1], nums[2])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Conditional sum of squares, conditioning on the first `p` values.
    Css,
    /// Exact likelihood through the Kalman filter.
    #[default]
    ExactMle,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "css" => Ok(Method::Css),
            "exact-mle" | "mle" | "ml" => Ok(Method::ExactMle),
            other => Err(Error::Parameter(format!("unknown estimation method `{other}`"))),
        }
    }
}
