use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::IncomeBand;
use crate::arima::{ArimaOrder, ForecastTable};
use crate::series::AnnualSeries;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorOutcome {
    pub indicator: String,
    pub series: String,
    pub window: (i32, i32),
    /// ADF-based order of integration, when one up to 2 was found.
    pub integration_order: Option<usize>,
    pub order: ArimaOrder,
    pub drift: bool,
    pub mu: f64,
    pub sigma2: f64,
    pub aic: f64,
    pub bic: f64,
    pub forecast: ForecastTable,
    /// Observed window followed by point forecasts.
    pub path: AnnualSeries,
}

/// Dollar GDP consistent with reaching the high-income threshold, by
/// proportional scaling. Reported with its formula because it is a
/// reconstruction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DevelopedTarget {
    pub year: i32,
    pub gdp_usd: f64,
    pub formula: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioReport {
    pub end_year: i32,
    pub indicators: Vec<IndicatorOutcome>,
    /// US$ crore.
    pub gdp_usd: Option<AnnualSeries>,
    pub gfd_ratio: Option<AnnualSeries>,
    pub gni_end: Option<f64>,
    pub band_end: Option<IncomeBand>,
    pub growth_base_year: Option<i32>,
    pub forecast_cagr: Option<f64>,
    pub required_cagr: Option<f64>,
    pub developed_target: Option<DevelopedTarget>,
}

impl ScenarioReport {
    pub fn indicator(&self, key: &str) -> Option<&IndicatorOutcome> {
        self.indicators.iter().find(|o| o.indicator == key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "## Models\n\n| Indicator | Window | d (ADF) | Model | Drift | AIC |\n|---|---|---:|---|---|---:|");
        for o in &self.indicators {
            let d = o.integration_order.map_or("-".to_string(), |d| d.to_string());
            let _ = writeln!(
                out,
                "| {} | {}-{} | {} | {} | {} | {:.4} |",
                o.indicator,
                o.window.0,
                o.window.1,
                d,
                o.order,
                if o.drift { "yes" } else { "no" },
                o.aic
            );
        }
        for o in &self.indicators {
            let _ = write!(out, "\n## Forecast: {}\n\n{}", o.indicator, o.forecast.to_markdown());
        }

        if let Some(usd) = &self.gdp_usd {
            let gdp = self.indicator("gdp").map(|o| &o.path);
            let fx = self.indicator("exchange_rate").map(|o| &o.path);
            let _ = writeln!(out, "\n## GDP in US$ crore\n\n| Year | GDP | Exchange Rate | GDP in $ |\n|---:|---:|---:|---:|");
            for (year, v) in usd.iter() {
                let g = gdp.and_then(|s| s.value_at(year)).unwrap_or(f64::NAN);
                let f = fx.and_then(|s| s.value_at(year)).unwrap_or(f64::NAN);
                let _ = writeln!(out, "| {year} | {g:.4} | {f:.4} | {v:.4} |");
            }
        }
        if let Some(r) = &self.gfd_ratio {
            let _ = writeln!(out, "\n## Gross fiscal deficit, % of GDP\n\n| Year | Ratio |\n|---:|---:|");
            for (year, v) in r.iter() {
                let _ = writeln!(out, "| {year} | {v:.4} |");
            }
        }

        let mut summary = Vec::new();
        if let (Some(g), Some(b)) = (self.gni_end, self.band_end) {
            summary.push(format!("GNI per capita {}: {g:.4} ({b})", self.end_year));
        }
        if let (Some(base), Some(f), Some(r)) = (self.growth_base_year, self.forecast_cagr, self.required_cagr) {
            summary.push(format!("Forecast growth {base}-{}: {:.2}% a year", self.end_year, 100.0 * f));
            summary.push(format!("Growth needed for high income by {}: {:.2}% a year", self.end_year, 100.0 * r));
        }
        if let Some(t) = &self.developed_target {
            summary.push(format!("High-income GDP in $ {}: {:.4} (computed as {})", t.year, t.gdp_usd, t.formula));
        }
        if !summary.is_empty() {
            let _ = writeln!(out, "\n## Summary\n");
            for line in summary {
                let _ = writeln!(out, "- {line}");
            }
        }
        out
    }
}
