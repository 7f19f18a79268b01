use super::critical::{critical_values, mackinnon_pvalue, CriticalSource, Statistic};
use super::report::{TestKind, UnitRootReport};
use super::{Deterministic, SignificanceLevel};
use crate::error::{Error, Result};
use crate::series::AnnualSeries;
use crate::stats::{difference, ols, Matrix, RegressionFit};

/// Dickey-Fuller regression of Δy_t on y_{t-1}, `lags` lagged differences and
/// the deterministic terms. `skip` drops extra leading observations so that
/// several lag orders can share one estimation sample.
pub(super) struct DfRegression {
    pub fit: RegressionFit,
    pub nobs: usize,
}

pub(super) fn df_regression(
    y: &[f64],
    det: Deterministic,
    lags: usize,
    skip: usize,
) -> Result<DfRegression> {
    if y.len() < 2 {
        return Err(Error::InsufficientData("unit-root test needs at least 2 observations".into()));
    }
    let first = y[0];
    if y.iter().all(|&v| v == first) {
        return Err(Error::ConstantSeries);
    }
    let dy: Vec<f64> = y.windows(2).map(|w| w[1] - w[0]).collect();
    // rows: dy index t runs over start..dy.len(), y_{t-1} is y[t]
    let start = lags.max(skip);
    let nobs = dy.len().saturating_sub(start);
    let k = 1 + lags + det.regressors();
    if nobs < k + 2 {
        return Err(Error::InsufficientData(format!(
            "{nobs} usable observations for {k} regressors"
        )));
    }

    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(k);
    columns.push((start..dy.len()).map(|t| y[t]).collect());
    for j in 1..=lags {
        columns.push((start..dy.len()).map(|t| dy[t - j]).collect());
    }
    if det != Deterministic::None {
        columns.push(vec![1.0; nobs]);
    }
    if det == Deterministic::ConstantTrend {
        columns.push((start..dy.len()).map(|t| (t + 1) as f64).collect());
    }
    let response = &dy[start..];
    let fit = ols(&Matrix::from_columns(&columns)?, response).map_err(|e| match e {
        Error::Singular { .. } => Error::Degenerate(format!("collinear test regression ({e})")),
        other => other,
    })?;

    let scale: f64 = response.iter().map(|v| v * v).sum::<f64>().max(f64::MIN_POSITIVE);
    if fit.rss <= 1e-20 * scale || !(fit.standard_errors[0] > 0.0) {
        return Err(Error::Degenerate(
            "test regression fits exactly; the statistic is undefined".into(),
        ));
    }
    Ok(DfRegression { fit, nobs })
}

/// Augmented Dickey-Fuller test with a fixed number of lagged differences.
pub fn adf_test(series: &AnnualSeries, det: Deterministic, lags: usize) -> Result<UnitRootReport> {
    adf_with_source(series, det, lags, CriticalSource::default())
}

/// As [`adf_test`] with a choice of critical-value source.
pub fn adf_with_source(
    series: &AnnualSeries,
    det: Deterministic,
    lags: usize,
    source: CriticalSource,
) -> Result<UnitRootReport> {
    let reg = df_regression(series.values(), det, lags, 0)?;
    let z_t = reg.fit.coefficients[0] / reg.fit.standard_errors[0];
    let critical = critical_values(det, Statistic::Tau, reg.nobs, source)?;
    Ok(UnitRootReport::new(
        TestKind::Adf,
        det,
        lags,
        reg.nobs,
        1.0 + reg.fit.coefficients[0],
        z_t,
        None,
        mackinnon_pvalue(z_t, det),
        critical,
        None,
    ))
}

/// ADF with the lag order chosen by AIC over `0..=max_lags` on a common
/// sample, then re-estimated on the full sample.
pub fn adf_test_auto(series: &AnnualSeries, det: Deterministic, max_lags: usize) -> Result<UnitRootReport> {
    let mut best: Option<(f64, usize)> = None;
    for lags in 0..=max_lags {
        let reg = df_regression(series.values(), det, lags, max_lags)?;
        let n = reg.nobs as f64;
        let aic = n * (reg.fit.rss / n).ln() + 2.0 * reg.fit.k as f64;
        if best.is_none_or(|(b, _)| aic < b) {
            best = Some((aic, lags));
        }
    }
    let (_, lags) = best.expect("at least one lag order evaluated");
    adf_test(series, det, lags)
}

/// Smallest `d <= max_d` whose `d`-th difference rejects a unit root at
/// `level` in an ADF test with `lags` lagged differences.
pub fn integration_order(
    series: &AnnualSeries,
    max_d: usize,
    det: Deterministic,
    level: SignificanceLevel,
    lags: usize,
) -> Result<usize> {
    for d in 0..=max_d {
        let diffed = difference(series, d)?;
        match adf_test(&diffed, det, lags) {
            Ok(report) if report.rejects(level) => return Ok(d),
            Ok(_) => {}
            // an exact-fit regression cannot reject; try the next difference
            Err(Error::Degenerate(_)) | Err(Error::ConstantSeries) => {}
            Err(e) => return Err(e),
        }
    }
    Err(Error::NonStationaryAtMax { max_d })
}
