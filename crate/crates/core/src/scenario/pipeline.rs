use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::report::{DevelopedTarget, IndicatorOutcome, ScenarioReport};
use super::{classify_income, convert_currency, ratio_series, required_growth, cagr, HIGH_INCOME_THRESHOLD};
use crate::arima::{auto_select, fit_with, forecast_with, ArimaOrder, FitOptions, IntervalVariance, Method};
use crate::error::{Error, Result};
use crate::series::{AnnualSeries, Catalog};
use crate::unit_root::{integration_order, Deterministic, SignificanceLevel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ModelChoice {
    /// Stepwise AIC search.
    #[default]
    Auto,
    Fixed { order: ArimaOrder, drift: bool },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorSpec {
    pub series: AnnualSeries,
    /// Inclusive estimation window; the whole series when absent.
    pub window: Option<(i32, i32)>,
    pub model: ModelChoice,
}

impl IndicatorSpec {
    pub fn new(series: AnnualSeries) -> Self {
        Self { series, window: None, model: ModelChoice::Auto }
    }

    pub fn window(mut self, start: i32, end: i32) -> Self {
        self.window = Some((start, end));
        self
    }

    pub fn fixed(mut self, order: ArimaOrder, drift: bool) -> Self {
        self.model = ModelChoice::Fixed { order, drift };
        self
    }

    fn sample(&self) -> Result<AnnualSeries> {
        match self.window {
            Some((a, b)) => self.series.slice(a, b),
            None => Ok(self.series.clone()),
        }
    }
}

/// Forecast inputs for the development-status report. Any indicator may be
/// absent; derived outputs needing it are then omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MacroScenario {
    pub gdp: Option<IndicatorSpec>,
    pub fx: Option<IndicatorSpec>,
    pub gfd: Option<IndicatorSpec>,
    pub gni: Option<IndicatorSpec>,
    pub end_year: i32,
    pub level: f64,
    pub method: Method,
    pub variance: IntervalVariance,
    /// Base year for the growth comparison; the first GNI forecast year by
    /// default.
    pub growth_base_year: Option<i32>,
}

impl Default for MacroScenario {
    fn default() -> Self {
        Self {
            gdp: None,
            fx: None,
            gfd: None,
            gni: None,
            end_year: 2047,
            level: 0.95,
            method: Method::ExactMle,
            variance: IntervalVariance::DfCorrected,
            growth_base_year: None,
        }
    }
}

impl MacroScenario {
    /// GDP over 1991–2025 as an IMA(2,1) without drift and the exchange
    /// rate over 1991–2024 as a random walk with drift, both to 2047.
    pub fn pinned_subperiod(catalog: &Catalog) -> Result<Self> {
        Ok(Self {
            gdp: Some(
                IndicatorSpec::new(catalog.series("gdp_rs_crore_1991_2025")?)
                    .window(1991, 2025)
                    .fixed(ArimaOrder::new(0, 2, 1)?, false),
            ),
            fx: Some(
                IndicatorSpec::new(catalog.series("exchange_rate_1971_2024")?)
                    .window(1991, 2024)
                    .fixed(ArimaOrder::new(0, 1, 0)?, true),
            ),
            ..Self::default()
        })
    }

    /// As [`Self::pinned_subperiod`] with the exchange rate over 1971–2024.
    pub fn pinned_entire(catalog: &Catalog) -> Result<Self> {
        let mut s = Self::pinned_subperiod(catalog)?;
        if let Some(fx) = s.fx.as_mut() {
            fx.window = Some((1971, 2024));
        }
        Ok(s)
    }

    fn indicators(&self) -> Vec<(&'static str, &IndicatorSpec)> {
        [("gdp", &self.gdp), ("exchange_rate", &self.fx), ("gfd", &self.gfd), ("gni", &self.gni)]
            .into_iter()
            .filter_map(|(k, s)| s.as_ref().map(|s| (k, s)))
            .collect()
    }
}

fn run_indicator(key: &str, spec: &IndicatorSpec, cfg: &MacroScenario) -> Result<IndicatorOutcome> {
    let sample = spec.sample()?;
    let horizon = cfg.end_year - sample.last_year();
    if horizon < 1 {
        return Err(Error::Parameter(format!(
            "end year {} is not after the last observation {}",
            cfg.end_year,
            sample.last_year()
        )));
    }
    let options = FitOptions::with_method(cfg.method);
    let d_hat = integration_order(&sample, ArimaOrder::MAX_D, Deterministic::Constant, SignificanceLevel::Five, 0);
    let (order, drift) = match spec.model {
        ModelChoice::Fixed { order, drift } => (order, drift),
        ModelChoice::Auto => {
            let sel = auto_select(&sample, &options)?;
            (sel.order, sel.drift)
        }
    };
    let fit = fit_with(&sample, order, drift, &options)?;
    let forecast = forecast_with(&fit, horizon as usize, cfg.level, cfg.variance)?;
    let path = sample.extended(&forecast.points())?;
    Ok(IndicatorOutcome {
        indicator: key.to_string(),
        series: sample.name().to_string(),
        window: (sample.first_year(), sample.last_year()),
        integration_order: d_hat.ok(),
        order,
        drift,
        mu: fit.mu,
        sigma2: fit.sigma2,
        aic: fit.aic,
        bic: fit.bic,
        forecast,
        path,
    })
}

/// Forecasts every configured indicator to `end_year` and derives the
/// dollar GDP path, deficit ratio, GNI band and growth comparison.
///
/// Indicators are processed in parallel; the report is identical to a
/// serial run.
pub fn run_scenario(config: &MacroScenario) -> Result<ScenarioReport> {
    let specs = config.indicators();
    if specs.is_empty() {
        return Err(Error::Parameter("scenario names no indicators".into()));
    }
    let outcomes: Vec<IndicatorOutcome> = specs
        .par_iter()
        .map(|(key, spec)| run_indicator(key, spec, config).map_err(|e| e.for_indicator(key)))
        .collect::<Result<_>>()?;
    let find = |k: &str| outcomes.iter().find(|o| o.indicator == k);

    let gdp_usd = match (find("gdp"), find("exchange_rate")) {
        (Some(g), Some(f)) => Some(convert_currency(&g.path, &f.path)?.with_name("gdp_usd")),
        _ => None,
    };
    let gfd_ratio = match (find("gfd"), find("gdp")) {
        (Some(n), Some(d)) => Some(ratio_series(&n.path, &d.path)?.with_name("gfd_pct_gdp")),
        _ => None,
    };

    let end = config.end_year;
    let mut report = ScenarioReport {
        end_year: end,
        indicators: outcomes.clone(),
        gdp_usd,
        gfd_ratio,
        gni_end: None,
        band_end: None,
        growth_base_year: None,
        forecast_cagr: None,
        required_cagr: None,
        developed_target: None,
    };

    if let Some(gni) = find("gni") {
        let gni_end = gni.path.value_at(end).expect("path reaches end year");
        report.gni_end = Some(gni_end);
        report.band_end = Some(classify_income(gni_end).map_err(|e| e.for_indicator("gni"))?);
        let base = config.growth_base_year.unwrap_or(gni.window.1 + 1);
        if base < end {
            if let Some(v) = gni.path.value_at(base) {
                let years = (end - base) as u32;
                report.growth_base_year = Some(base);
                report.forecast_cagr = Some(cagr(v, gni_end, years)?);
                report.required_cagr = Some(required_growth(v, HIGH_INCOME_THRESHOLD, years)?);
            }
        }
        if let Some(usd) = report.gdp_usd.as_ref().and_then(|s| s.value_at(end)) {
            report.developed_target = Some(DevelopedTarget {
                year: end,
                gdp_usd: HIGH_INCOME_THRESHOLD / gni_end * usd,
                formula: format!("{HIGH_INCOME_THRESHOLD} / GNI per capita({end}) x GDP in $({end})"),
            });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arima::{fit, forecast};
    use crate::series::Unit;

    #[test]
    fn pinned_subperiod_dollar_gdp() {
        let r = run_scenario(&MacroScenario::pinned_subperiod(&Catalog::bundled()).unwrap()).unwrap();
        let usd = r.gdp_usd.as_ref().unwrap();
        assert_eq!(usd.first_year(), 1991);
        assert_eq!(usd.last_year(), 2047);
        let v = usd.value_at(2047).unwrap();
        assert!((v / 765728.6367 - 1.0).abs() < 0.005, "{v}");
        let fx = r.indicator("exchange_rate").unwrap();
        assert!((fx.forecast.rows[0].point - 84.75476).abs() < 1e-3);
    }

    #[test]
    fn end_year_must_follow_data() {
        let mut cfg = MacroScenario::pinned_subperiod(&Catalog::bundled()).unwrap();
        cfg.end_year = 2024;
        let err = run_scenario(&cfg).unwrap_err();
        assert!(matches!(err, Error::Indicator { .. }), "{err}");
    }

    #[test]
    fn composes_hand_built_forecasts() {
        let fx = Catalog::bundled().series("exchange_rate_1971_2024").unwrap();
        let gni = AnnualSeries::new("gni", Unit::UsdPerCapita, 2000, (0..24).map(|t| 450.0 + 95.0 * t as f64 + (t % 3) as f64 * 7.0).collect(), "").unwrap();
        let o = ArimaOrder::new(0, 1, 0).unwrap();
        let cfg = MacroScenario {
            fx: Some(IndicatorSpec::new(fx.clone()).fixed(o, true)),
            gni: Some(IndicatorSpec::new(gni.clone()).fixed(o, true)),
            ..MacroScenario::default()
        };
        let r = run_scenario(&cfg).unwrap();
        let hand = forecast(&fit(&gni, o, true, Method::ExactMle).unwrap(), 24, 0.95).unwrap();
        assert_eq!(r.indicator("gni").unwrap().forecast, hand);
        let g2047 = hand.row(2047).unwrap().point;
        assert_eq!(r.gni_end, Some(g2047));
        assert_eq!(r.band_end, Some(classify_income(g2047).unwrap()));
        assert_eq!(r.growth_base_year, Some(2024));
        let base = hand.row(2024).unwrap().point;
        assert_eq!(r.forecast_cagr, Some(cagr(base, g2047, 23).unwrap()));
        assert!(r.gdp_usd.is_none() && r.developed_target.is_none());
    }

    #[test]
    fn repeated_runs_are_identical() {
        let cfg = MacroScenario::pinned_entire(&Catalog::bundled()).unwrap();
        let a = run_scenario(&cfg).unwrap();
        let b = run_scenario(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json(), b.to_json());
        let serial = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        assert_eq!(serial.install(|| run_scenario(&cfg).unwrap()), a);
    }

    #[test]
    fn empty_scenario_is_rejected() {
        assert!(run_scenario(&MacroScenario::default()).is_err());
    }
}
