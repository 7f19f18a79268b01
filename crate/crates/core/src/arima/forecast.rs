use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::css::{css_forecast, css_residuals};
use super::fit::ArimaFit;
use super::kalman::StateSpace;
use super::poly::{integrated_ar, psi_weights};
use super::Method;
use crate::error::{Error, Result};
use crate::stats::{difference_values, Z95};

/// Which innovation variance scales the prediction intervals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntervalVariance {
    /// The maximum-likelihood σ̂².
    Mle,
    /// σ̂² · n / (n − m), with `m = p + q + drift` estimated mean-equation
    /// parameters.
    #[default]
    DfCorrected,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ForecastRow {
    pub year: i32,
    pub point: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ForecastTable {
    pub rows: Vec<ForecastRow>,
    /// Confidence level as a fraction, e.g. 0.95.
    pub level: f64,
    /// Set when the fit had zero innovation variance.
    pub degenerate: bool,
}

impl ForecastTable {
    pub fn row(&self, year: i32) -> Option<&ForecastRow> {
        self.rows.iter().find(|r| r.year == year)
    }

    pub fn points(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.point).collect()
    }

    pub fn first_year(&self) -> Option<i32> {
        self.rows.first().map(|r| r.year)
    }

    /// CSV with columns `year,forecast,lower,upper` at full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("year,forecast,lower,upper\n");
        for r in &self.rows {
            let _ = writeln!(out, "{},{},{},{}", r.year, r.point, r.lower, r.upper);
        }
        out
    }

    /// Markdown table, four decimals.
    pub fn to_markdown(&self) -> String {
        let pct = self.level * 100.0;
        let mut out = format!("| Year | Forecast | Lower_{pct:.0} | Upper_{pct:.0} |\n|---:|---:|---:|---:|\n");
        for r in &self.rows {
            let _ = writeln!(out, "| {} | {:.4} | {:.4} | {:.4} |", r.year, r.point, r.lower, r.upper);
        }
        out
    }
}

/// Two-sided normal quantile for `level` (fraction or percentage).
pub(crate) fn z_for_level(level: f64) -> Result<f64> {
    let level = if level > 1.0 { level / 100.0 } else { level };
    if !(level > 0.0 && level < 1.0) {
        return Err(Error::Parameter(format!("confidence level {level} outside (0, 1)")));
    }
    if (level - 0.95).abs() < 1e-12 {
        return Ok(Z95);
    }
    Ok(Normal::standard().inverse_cdf(0.5 + level / 2.0))
}

pub(crate) fn normalize_level(level: f64) -> f64 {
    if level > 1.0 {
        level / 100.0
    } else {
        level
    }
}

/// Forecasts with degrees-of-freedom corrected interval variance.
pub fn forecast(fit: &ArimaFit, horizon: usize, level: f64) -> Result<ForecastTable> {
    forecast_with(fit, horizon, level, IntervalVariance::default())
}

/// `h`-step forecasts on the original scale. Intervals are
/// `ŷ ± z √(σ² Σ_{j<h} ψ_j²)` with ψ-weights of the integrated model.
pub fn forecast_with(
    fit: &ArimaFit,
    horizon: usize,
    level: f64,
    variance: IntervalVariance,
) -> Result<ForecastTable> {
    if horizon == 0 {
        return Err(Error::Parameter("forecast horizon must be at least 1".into()));
    }
    if !fit.degenerate && !fit.loglik.is_finite() {
        return Err(Error::Parameter("cannot forecast from a fit without a finite likelihood".into()));
    }
    let z = z_for_level(level)?;
    let y = fit.series.values();
    let d = fit.order.d;
    let w = difference_values(y, d);
    let demeaned: Vec<f64> = w.iter().map(|v| v - fit.mu).collect();

    let w_future: Vec<f64> = if fit.degenerate || (fit.ar.is_empty() && fit.ma.is_empty()) {
        vec![0.0; horizon]
    } else {
        match fit.method {
            Method::ExactMle => {
                let ss = StateSpace::new(&fit.ar, &fit.ma);
                let filtered = ss
                    .filter(&demeaned)
                    .ok_or_else(|| Error::NonConvergence("filter failed while forecasting".into()))?;
                ss.forecast(&filtered.next_state, horizon)
            }
            Method::Css => {
                let e = css_residuals(&demeaned, &fit.ar, &fit.ma);
                let mut full = vec![0.0; fit.ar.len()];
                full.extend(e);
                css_forecast(&demeaned, &full, &fit.ar, &fit.ma, horizon)
            }
        }
    }
    .into_iter()
    .map(|v| v + fit.mu)
    .collect();

    // integrate back: last[k] holds the latest value of the k-th difference
    let mut last: Vec<f64> = (0..d)
        .map(|k| *difference_values(y, k).last().expect("series longer than d"))
        .collect();
    let mut points = Vec::with_capacity(horizon);
    for wf in w_future {
        let mut carry = wf;
        for k in (0..d).rev() {
            last[k] += carry;
            carry = last[k];
        }
        points.push(carry);
    }

    let m = fit.order.p + fit.order.q + usize::from(fit.drift);
    let sigma2 = match variance {
        IntervalVariance::Mle => fit.sigma2,
        IntervalVariance::DfCorrected if fit.n_eff > m => fit.sigma2 * fit.n_eff as f64 / (fit.n_eff - m) as f64,
        IntervalVariance::DfCorrected => fit.sigma2,
    };
    let psi = psi_weights(&integrated_ar(&fit.ar, d), &fit.ma, horizon);
    let last_year = fit.series.last_year();
    let mut cum = 0.0;
    let rows = points
        .into_iter()
        .enumerate()
        .map(|(h, point)| {
            cum += psi[h] * psi[h];
            let half = z * (sigma2 * cum).sqrt();
            ForecastRow {
                year: last_year + h as i32 + 1,
                point,
                lower: point - half,
                upper: point + half,
            }
        })
        .collect();
    Ok(ForecastTable {
        rows,
        level: normalize_level(level),
        degenerate: fit.degenerate,
    })
}
