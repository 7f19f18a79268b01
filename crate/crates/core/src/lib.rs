//! Univariate Box-Jenkins forecasting: annual series handling, unit-root
//! testing, ARIMA estimation and order selection, forecasting with normal
//! prediction intervals, and derived development-status scenarios.

pub mod arima;
pub mod error;
pub mod reproduce;
pub mod scenario;
pub mod series;
pub mod stats;
pub mod unit_root;

pub use arima::{ArimaFit, ArimaOrder, ForecastTable, GridResult, Method};
pub use error::{Error, Result};
pub use scenario::{IncomeBand, MacroScenario, ScenarioReport};

pub use series::{AnnualSeries, Catalog, Unit};
pub use unit_root::{Deterministic, SignificanceLevel, UnitRootReport};
