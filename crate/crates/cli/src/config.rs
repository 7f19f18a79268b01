//! Flat key-value run configuration. A TOML file supplies defaults and
//! command-line flags override it key by key.

use std::path::Path;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    // input and output
    pub data: Option<String>,
    pub unit: Option<String>,
    pub start: Option<i32>,
    pub end: Option<i32>,
    pub out: Option<String>,
    pub format: Option<Vec<String>>,
    pub plot: Option<bool>,

    // unit-root tests and correlograms
    pub test: Option<String>,
    pub det: Option<String>,
    pub lags: Option<usize>,
    pub bandwidth: Option<String>,
    pub critical: Option<String>,
    pub diff: Option<usize>,
    pub max_lag: Option<usize>,

    // models
    pub order: Option<String>,
    pub drift: Option<bool>,
    pub method: Option<String>,
    pub p_max: Option<usize>,
    pub d_max: Option<usize>,
    pub q_max: Option<usize>,
    pub drift_policy: Option<String>,
    pub horizon: Option<usize>,
    pub level: Option<f64>,
    pub interval_variance: Option<String>,

    // scenario
    pub preset: Option<String>,
    pub end_year: Option<i32>,
    pub gdp: Option<String>,
    pub fx: Option<String>,
    pub gfd: Option<String>,
    pub gni: Option<String>,
    pub gdp_window: Option<String>,
    pub fx_window: Option<String>,
    pub gfd_window: Option<String>,
    pub gni_window: Option<String>,
    pub gdp_order: Option<String>,
    pub fx_order: Option<String>,
    pub gfd_order: Option<String>,
    pub gni_order: Option<String>,
    pub gdp_drift: Option<bool>,
    pub fx_drift: Option<bool>,
    pub gfd_drift: Option<bool>,
    pub gni_drift: Option<bool>,
    pub growth_base_year: Option<i32>,

    // ingest
    pub source: Option<String>,
    pub indicator: Option<String>,
    pub country: Option<String>,
    pub endpoint: Option<String>,
    pub input: Option<String>,
    pub output: Option<String>,
}

macro_rules! overlay_fields {
    ($base:expr, $top:expr, $($f:ident),* $(,)?) => {
        $( if $top.$f.is_some() { $base.$f = $top.$f.clone(); } )*
    };
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| e.message().to_string())
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("flat config serializes")
    }

    /// Keys set in `top` replace those in `self`.
    pub fn overlay(mut self, top: &RunConfig) -> Self {
        overlay_fields!(
            self, top, data, unit, start, end, out, format, plot, test, det, lags, bandwidth, critical, diff,
            max_lag, order, drift, method, p_max, d_max, q_max, drift_policy, horizon, level, interval_variance,
            preset, end_year, gdp, fx, gfd, gni, gdp_window, fx_window, gfd_window, gni_window, gdp_order,
            fx_order, gfd_order, gni_order, gdp_drift, fx_drift, gfd_drift, gni_drift, growth_base_year, source,
            indicator, country, endpoint, input, output,
        );
        self
    }
}
