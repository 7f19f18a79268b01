//! Published figures that the bundled data must reproduce, each with its
//! tolerance. Shared by the `reproduce-paper` command and the acceptance
//! tests.

use std::fmt;

use serde::Serialize;

use crate::arima::{
    fit, forecast, grid_search, ArimaOrder, DriftPolicy, FitOptions, ForecastRow, ForecastTable, GridBounds, Method,
};
use crate::error::{Error, Result};
use crate::scenario::{
    cagr, classify_income, convert_currency, ratio_series, required_growth, run_scenario, MacroScenario,
    HIGH_INCOME_THRESHOLD,
};
use crate::series::{AnnualSeries, Catalog};
use crate::stats::difference;
use crate::unit_root::{
    adf_test, critical_values, pp_test, Bandwidth, CriticalSource, Deterministic, Statistic,
    UnitRootReport,
};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    /// Acceptance criterion the check belongs to.
    pub criterion: u8,
    pub name: String,
    pub expected: String,
    pub actual: String,
    pub tolerance: String,
    pub passed: bool,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: got {}, want {} ({})",
            if self.passed { "PASS" } else { "FAIL" },
            self.criterion,
            self.name,
            self.actual,
            self.expected,
            self.tolerance
        )
    }
}

type Got<T> = std::result::Result<T, String>;

fn got<T>(r: Result<T>) -> Got<T> {
    r.map_err(|e| e.to_string())
}

fn pick<T, U>(r: &Got<T>, f: impl Fn(&T) -> U) -> Got<U> {
    r.as_ref().map(f).map_err(Clone::clone)
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, criterion: u8, name: &str, expected: String, actual: String, tolerance: String, passed: bool) {
        self.0.push(Check { criterion, name: name.to_string(), expected, actual, tolerance, passed });
    }

    fn abs(&mut self, criterion: u8, name: &str, expected: f64, actual: Got<f64>, tol: f64) {
        let (shown, ok) = match actual {
            Ok(v) => (format!("{v:.6}"), (v - expected).abs() <= tol),
            Err(e) => (format!("error: {e}"), false),
        };
        self.push(criterion, name, expected.to_string(), shown, format!("± {tol}"), ok);
    }

    fn rel(&mut self, criterion: u8, name: &str, expected: f64, actual: Got<f64>, tol: f64) {
        let (shown, ok) = match actual {
            Ok(v) => (format!("{v:.4}"), ((v - expected) / expected).abs() <= tol),
            Err(e) => (format!("error: {e}"), false),
        };
        self.push(criterion, name, expected.to_string(), shown, format!("± {}%", tol * 100.0), ok);
    }

    fn label(&mut self, criterion: u8, name: &str, expected: &str, actual: Got<String>) {
        let (shown, ok) = match actual {
            Ok(v) => (v.clone(), v == expected),
            Err(e) => (format!("error: {e}"), false),
        };
        self.push(criterion, name, expected.to_string(), shown, "exact".into(), ok);
    }
}

/// Every bundled-data check, in criterion order.
pub fn pinned_checks(catalog: &Catalog) -> Vec<Check> {
    let mut c = Checks(Vec::new());
    unit_root_checks(catalog, &mut c);
    forecast_checks(catalog, &mut c);
    critical_value_checks(&mut c);
    gdp_checks(catalog, &mut c);
    scenario_checks(catalog, &mut c);
    c.0
}

pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed)
}

fn missing(what: String) -> Error {
    Error::Parameter(format!("{what} missing"))
}

fn unit_root_checks(catalog: &Catalog, c: &mut Checks) {
    let tests = |d: usize| -> Result<(UnitRootReport, UnitRootReport)> {
        let s = difference(&catalog.series("exchange_rate_1971_2024")?, d)?;
        Ok((
            adf_test(&s, Deterministic::Constant, 0)?,
            pp_test(&s, Deterministic::Constant, Bandwidth::Auto)?,
        ))
    };
    let (level, diff) = (got(tests(0)), got(tests(1)));
    c.abs(1, "exchange rate ADF Z(t), level", 1.567, pick(&level, |r| r.0.z_t), 0.01);
    c.abs(1, "exchange rate ADF p-value, level", 0.9978, pick(&level, |r| r.0.p_value), 0.005);
    c.abs(1, "exchange rate ADF Z(t), first difference", -6.363, pick(&diff, |r| r.0.z_t), 0.01);
    c.abs(1, "exchange rate ADF p-value, first difference", 0.0, pick(&diff, |r| r.0.p_value), 0.005);
    let zr = |r: &(UnitRootReport, UnitRootReport)| r.1.z_rho.unwrap_or(f64::NAN);
    c.abs(2, "exchange rate PP Z(rho), level", 1.159, pick(&level, zr), 0.02);
    c.abs(2, "exchange rate PP Z(t), level", 1.393, pick(&level, |r| r.1.z_t), 0.02);
    c.abs(2, "exchange rate PP Z(rho), first difference", -48.942, pick(&diff, zr), 0.1);
    c.abs(2, "exchange rate PP Z(t), first difference", -6.408, pick(&diff, |r| r.1.z_t), 0.02);
}

fn forecast_checks(catalog: &Catalog, c: &mut Checks) {
    let rw = ArimaOrder { p: 0, d: 1, q: 0 };
    let run = |window: Option<(i32, i32)>| -> Result<ForecastTable> {
        let mut s = catalog.series("exchange_rate_1971_2024")?;
        if let Some((a, b)) = window {
            s = s.slice(a, b)?;
        }
        forecast(&fit(&s, rw, true, Method::ExactMle)?, 23, 0.95)
    };
    let entire = got(run(None));
    let row = |y: i32| -> Got<ForecastRow> {
        entire.as_ref().map_err(Clone::clone)?.row(y).copied().ok_or_else(|| format!("no row {y}"))
    };
    c.abs(3, "exchange rate 2025 forecast", 84.20917, row(2025).map(|r| r.point), 0.001);
    c.abs(3, "exchange rate 2047 forecast", 115.4375, row(2047).map(|r| r.point), 0.01);
    c.abs(3, "exchange rate 2025 lower 95%", 79.47523, row(2025).map(|r| r.lower), 0.01);
    c.abs(3, "exchange rate 2025 upper 95%", 88.94311, row(2025).map(|r| r.upper), 0.01);
    let sub = got(run(Some((1991, 2024)))).map(|t| t.rows[0].point);
    c.abs(3, "exchange rate 2025 forecast, 1991-2024 sample", 84.75476, sub, 0.001);
}

fn critical_value_checks(c: &mut Checks) {
    let cases = [
        (Deterministic::Constant, 53, [-3.576, -2.928, -2.599]),
        (Deterministic::ConstantTrend, 61, [-4.126, -3.489, -3.173]),
    ];
    for (det, n, want) in cases {
        let cv = got(critical_values(det, Statistic::Tau, n, CriticalSource::FullerTable));
        for (i, level) in ["1%", "5%", "10%"].into_iter().enumerate() {
            let v = pick(&cv, |v| [v.cv1, v.cv5, v.cv10][i]);
            c.abs(4, &format!("τ critical value, {}, n = {n}, {level}", det.as_str()), want[i], v, 0.01);
        }
    }
}

fn gdp_checks(catalog: &Catalog, c: &mut Checks) {
    let ima = ArimaOrder { p: 0, d: 2, q: 1 };
    let gdp = catalog.series("gdp_rs_crore_1991_2025");
    let grid = got(gdp.as_ref().map_err(|e| missing(e.to_string())).and_then(|s| {
        grid_search(s, GridBounds::new(1, 2, 1)?, DriftPolicy::WhenUndifferenced, &FitOptions::default())
    }));
    c.label(5, "GDP 1991-2025 grid best by AIC", "(0, 2, 1)", pick(&grid, |g| g.best_aic.to_string()));
    let aic = |o: ArimaOrder| -> Got<f64> {
        grid.as_ref().map_err(Clone::clone)?.candidate(o).map(|c| c.aic).ok_or_else(|| format!("{o} missing"))
    };
    c.abs(5, "GDP (0,2,0) AIC", 989.6011, aic(ArimaOrder { p: 0, d: 2, q: 0 }), 0.5);
    c.abs(5, "GDP (0,2,1) AIC", 984.4337, aic(ima), 2.0);
    let point = (|| -> Result<f64> {
        let t = forecast(&fit(&gdp?, ima, false, Method::ExactMle)?, 22, 0.95)?;
        t.row(2047).map(|r| r.point).ok_or_else(|| missing("2047 row".into()))
    })();
    c.rel(5, "GDP (0,2,1) 2047 forecast", 98_002_564.0, got(point), 0.005);
}

fn scenario_checks(catalog: &Catalog, c: &mut Checks) {
    let at = |s: &AnnualSeries, year: i32| s.value_at(year).ok_or_else(|| missing(format!("{} {year}", s.name())));
    let usd = (|| {
        let s = convert_currency(&catalog.series("gdp_forecast_entire")?, &catalog.series("exchange_rate_forecast_entire")?)?;
        at(&s, 2047)
    })();
    c.abs(6, "GDP in $ 2047 from published forecasts", 847190.5157, got(usd), 0.5);
    let ratio = (|| {
        let s = ratio_series(&catalog.series("gfd_forecast_entire")?, &catalog.series("gdp_forecast_entire")?)?;
        at(&s, 2047)
    })();
    c.abs(6, "gross fiscal deficit % of GDP 2047", 2.32, got(ratio), 0.01);
    c.label(6, "income band of 5492.28", "upper-middle", got(classify_income(5492.28).map(|b| b.to_string())));
    let gni = got((|| {
        let s = catalog.series("gni_forecast_entire")?;
        Ok((at(&s, 2024)?, at(&s, 2047)?))
    })());
    let growth = gni.clone().and_then(|(a, b)| got(cagr(a, b, 23))).map(|g| 100.0 * g);
    c.abs(6, "GNI forecast growth 2024-2047, %", 3.20, growth, 0.05);
    let needed = gni.and_then(|(a, _)| got(required_growth(a, HIGH_INCOME_THRESHOLD, 23))).map(|g| 100.0 * g);
    c.abs(6, "growth needed to reach high income by 2047, %", 7.48, needed, 0.05);
    let pinned = (|| {
        let r = run_scenario(&MacroScenario::pinned_subperiod(catalog)?)?;
        let s = r.gdp_usd.ok_or_else(|| missing("dollar GDP".into()))?;
        at(&s, 2047)
    })();
    c.rel(6, "scenario GDP in $ 2047, 1991 samples", 765728.6367, got(pinned), 0.005);
}
