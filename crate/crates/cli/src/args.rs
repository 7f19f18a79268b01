use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::config::RunConfig;

#[derive(Debug, Parser)]
#[command(
    name = "boxjen",
    version,
    about = "Box-Jenkins forecasting: unit-root tests, ARIMA selection, forecasts and scenario reports",
    arg_required_else_help = true
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Download or normalise an annual series into `year,value` CSV
    Ingest(IngestArgs),
    /// ADF and Phillips-Perron unit-root tests
    Unitroot(UnitrootArgs),
    /// Sample ACF and PACF with a white-noise band
    Correlogram(CorrelogramArgs),
    /// Estimate one ARIMA model
    Fit(FitArgs),
    /// Fit every order in a (p, d, q) lattice and rank by AIC
    Grid(GridArgs),
    /// Choose d by ADF tests and (p, q, drift) by stepwise AIC
    Autofit(AutofitArgs),
    /// Point forecasts with normal prediction intervals
    Forecast(ForecastArgs),
    /// Multi-indicator forecasts and development-status derivations
    Scenario(ScenarioArgs),
    /// Recompute every published figure reproducible from the bundled data
    ReproducePaper(ReproduceArgs),
}

/// Options shared by every command.
#[derive(Debug, Args)]
pub struct Common {
    /// TOML file of flat `key = value` settings; flags take precedence
    #[arg(long, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// `catalog:<key>` or a path to a `year,value` CSV
    #[arg(long)]
    pub data: Option<String>,
    /// Unit of a CSV input (e.g. usd, rupee-crore, rupees-per-usd)
    #[arg(long)]
    pub unit: Option<String>,
    /// First year of the sample window
    #[arg(long)]
    pub start: Option<i32>,
    /// Last year of the sample window
    #[arg(long)]
    pub end: Option<i32>,
    /// Directory for output files; stdout when absent
    #[arg(long, value_name = "DIR")]
    pub out: Option<String>,
    /// Output formats: csv, json, md
    #[arg(long, value_delimiter = ',')]
    pub format: Option<Vec<String>>,
    /// Also write SVG charts (needs --out)
    #[arg(long)]
    pub plot: bool,
}

#[derive(Debug, Args)]
pub struct DriftFlags {
    /// Include a drift (intercept of the differenced series)
    #[arg(long, overrides_with = "no_drift")]
    pub drift: bool,
    #[arg(long, overrides_with = "drift")]
    pub no_drift: bool,
}

impl DriftFlags {
    fn value(&self) -> Option<bool> {
        match (self.drift, self.no_drift) {
            (true, _) => Some(true),
            (_, true) => Some(false),
            _ => None,
        }
    }
}

#[derive(Debug, Args)]
pub struct IngestArgs {
    #[command(flatten)]
    pub common: Common,
    /// worldbank or json
    #[arg(long)]
    pub source: Option<String>,
    #[arg(long)]
    pub indicator: Option<String>,
    #[arg(long)]
    pub country: Option<String>,
    #[arg(long)]
    pub endpoint: Option<String>,
    /// Parse a saved response body instead of downloading
    #[arg(long, value_name = "FILE")]
    pub input: Option<String>,
    /// Write the CSV to this file
    #[arg(long, value_name = "FILE")]
    pub output: Option<String>,
}

#[derive(Debug, Args)]
pub struct UnitrootArgs {
    #[command(flatten)]
    pub common: Common,
    /// adf, pp or both
    #[arg(long)]
    pub test: Option<String>,
    /// none, constant or trend
    #[arg(long)]
    pub det: Option<String>,
    /// Lagged differences in the ADF regression
    #[arg(long)]
    pub lags: Option<usize>,
    /// Newey-West bandwidth for PP: auto or an integer
    #[arg(long)]
    pub bandwidth: Option<String>,
    /// fuller or mackinnon
    #[arg(long)]
    pub critical: Option<String>,
    /// Difference the series this many times first
    #[arg(long)]
    pub diff: Option<usize>,
}

#[derive(Debug, Args)]
pub struct CorrelogramArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub max_lag: Option<usize>,
    #[arg(long)]
    pub diff: Option<usize>,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    #[command(flatten)]
    pub common: Common,
    /// p,d,q
    #[arg(long)]
    pub order: Option<String>,
    #[command(flatten)]
    pub drift: DriftFlags,
    /// exact-mle or css
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub p_max: Option<usize>,
    #[arg(long)]
    pub d_max: Option<usize>,
    #[arg(long)]
    pub q_max: Option<usize>,
    /// off, on or when-undifferenced
    #[arg(long)]
    pub drift_policy: Option<String>,
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct AutofitArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub method: Option<String>,
}

#[derive(Debug, Args)]
pub struct ForecastArgs {
    #[command(flatten)]
    pub common: Common,
    /// p,d,q; chosen by stepwise search when absent
    #[arg(long)]
    pub order: Option<String>,
    #[command(flatten)]
    pub drift: DriftFlags,
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub horizon: Option<usize>,
    /// Confidence level, as 95 or 0.95
    #[arg(long)]
    pub level: Option<f64>,
    /// df-corrected or mle
    #[arg(long)]
    pub interval_variance: Option<String>,
}

#[derive(Debug, Args)]
pub struct ScenarioArgs {
    #[command(flatten)]
    pub common: Common,
    /// pinned-subperiod or pinned-entire
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long)]
    pub end_year: Option<i32>,
    #[arg(long)]
    pub level: Option<f64>,
    #[arg(long)]
    pub method: Option<String>,
    #[arg(long)]
    pub growth_base_year: Option<i32>,
    #[arg(long)]
    pub gdp: Option<String>,
    #[arg(long)]
    pub fx: Option<String>,
    #[arg(long)]
    pub gfd: Option<String>,
    #[arg(long)]
    pub gni: Option<String>,
    /// START:END
    #[arg(long)]
    pub gdp_window: Option<String>,
    #[arg(long)]
    pub fx_window: Option<String>,
    #[arg(long)]
    pub gfd_window: Option<String>,
    #[arg(long)]
    pub gni_window: Option<String>,
    /// p,d,q; stepwise search when absent
    #[arg(long)]
    pub gdp_order: Option<String>,
    #[arg(long)]
    pub fx_order: Option<String>,
    #[arg(long)]
    pub gfd_order: Option<String>,
    #[arg(long)]
    pub gni_order: Option<String>,
    #[arg(long)]
    pub gdp_drift: Option<bool>,
    #[arg(long)]
    pub fx_drift: Option<bool>,
    #[arg(long)]
    pub gfd_drift: Option<bool>,
    #[arg(long)]
    pub gni_drift: Option<bool>,
}

#[derive(Debug, Args)]
pub struct ReproduceArgs {
    #[command(flatten)]
    pub common: Common,
}

impl Common {
    fn config(&self) -> RunConfig {
        RunConfig {
            data: self.data.clone(),
            unit: self.unit.clone(),
            start: self.start,
            end: self.end,
            out: self.out.clone(),
            format: self.format.clone(),
            plot: self.plot.then_some(true),
            ..RunConfig::default()
        }
    }
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::Ingest(a) => &a.common,
            Command::Unitroot(a) => &a.common,
            Command::Correlogram(a) => &a.common,
            Command::Fit(a) => &a.common,
            Command::Grid(a) => &a.common,
            Command::Autofit(a) => &a.common,
            Command::Forecast(a) => &a.common,
            Command::Scenario(a) => &a.common,
            Command::ReproducePaper(a) => &a.common,
        }
    }

    /// Settings given on the command line.
    pub fn flags(&self) -> RunConfig {
        let base = self.common().config();
        match self {
            Command::Ingest(a) => RunConfig {
                source: a.source.clone(),
                indicator: a.indicator.clone(),
                country: a.country.clone(),
                endpoint: a.endpoint.clone(),
                input: a.input.clone(),
                output: a.output.clone(),
                ..base
            },
            Command::Unitroot(a) => RunConfig {
                test: a.test.clone(),
                det: a.det.clone(),
                lags: a.lags,
                bandwidth: a.bandwidth.clone(),
                critical: a.critical.clone(),
                diff: a.diff,
                ..base
            },
            Command::Correlogram(a) => RunConfig { max_lag: a.max_lag, diff: a.diff, ..base },
            Command::Fit(a) => RunConfig {
                order: a.order.clone(),
                drift: a.drift.value(),
                method: a.method.clone(),
                ..base
            },
            Command::Grid(a) => RunConfig {
                p_max: a.p_max,
                d_max: a.d_max,
                q_max: a.q_max,
                drift_policy: a.drift_policy.clone(),
                method: a.method.clone(),
                ..base
            },
            Command::Autofit(a) => RunConfig { method: a.method.clone(), ..base },
            Command::Forecast(a) => RunConfig {
                order: a.order.clone(),
                drift: a.drift.value(),
                method: a.method.clone(),
                horizon: a.horizon,
                level: a.level,
                interval_variance: a.interval_variance.clone(),
                ..base
            },
            Command::Scenario(a) => RunConfig {
                preset: a.preset.clone(),
                end_year: a.end_year,
                level: a.level,
                method: a.method.clone(),
                growth_base_year: a.growth_base_year,
                gdp: a.gdp.clone(),
                fx: a.fx.clone(),
                gfd: a.gfd.clone(),
                gni: a.gni.clone(),
                gdp_window: a.gdp_window.clone(),
                fx_window: a.fx_window.clone(),
                gfd_window: a.gfd_window.clone(),
                gni_window: a.gni_window.clone(),
                gdp_order: a.gdp_order.clone(),
                fx_order: a.fx_order.clone(),
                gfd_order: a.gfd_order.clone(),
                gni_order: a.gni_order.clone(),
                gdp_drift: a.gdp_drift,
                fx_drift: a.fx_drift,
                gfd_drift: a.gfd_drift,
                gni_drift: a.gni_drift,
                ..base
            },
            Command::ReproducePaper(_) => base,
        }
    }
}
