use std::fmt::Write as _;

use serde::Serialize;

use super::mean;
use crate::error::{Error, Result};
use crate::series::AnnualSeries;

/// Two-sided 95% standard normal quantile.
pub const Z95: f64 = 1.959964;

/// Sample ACF/PACF with the white-noise band.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Correlogram {
    pub n: usize,
    pub max_lag: usize,
    /// `acf[k]` for `k = 0..=max_lag`; `acf[0] == 1`.
    pub acf: Vec<f64>,
    /// `pacf[k - 1]` is the lag-`k` partial autocorrelation, `k = 1..=max_lag`.
    pub pacf: Vec<f64>,
    pub band: f64,
}

impl Correlogram {
    /// CSV with columns `lag,acf,pacf,band`; the lag-0 row has an empty PACF.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("lag,acf,pacf,band\n");
        for (k, r) in self.acf.iter().enumerate() {
            let p = if k == 0 { String::new() } else { self.pacf[k - 1].to_string() };
            let _ = writeln!(out, "{k},{r},{p},{}", self.band);
        }
        out
    }
}

/// `min(floor(n/2) - 1, 24)`, at least 1.
pub fn default_max_lag(n: usize) -> usize {
    (n / 2).saturating_sub(1).clamp(1, 24)
}

/// Biased-estimator ACF (`c_k / c_0`, `c_k = (1/n) Σ (y_t - ȳ)(y_{t+k} - ȳ)`)
/// and Durbin-Levinson PACF.
pub fn correlogram(series: &AnnualSeries, max_lag: usize) -> Result<Correlogram> {
    let y = series.values();
    let n = y.len();
    if max_lag == 0 || n < max_lag + 2 {
        return Err(Error::InsufficientData(format!(
            "correlogram to lag {max_lag} needs at least {} observations, got {n}",
            max_lag + 2
        )));
    }
    let m = mean(y);
    let dev: Vec<f64> = y.iter().map(|v| v - m).collect();
    let c0 = dev.iter().map(|d| d * d).sum::<f64>() / n as f64;
    if c0 <= f64::EPSILON * m.abs().max(1.0).powi(2) {
        return Err(Error::ConstantSeries);
    }
    let mut acf = Vec::with_capacity(max_lag + 1);
    acf.push(1.0);
    for k in 1..=max_lag {
        let ck = (0..n - k).map(|t| dev[t] * dev[t + k]).sum::<f64>() / n as f64;
        acf.push(ck / c0);
    }
    let pacf = durbin_levinson(&acf);
    Ok(Correlogram {
        n,
        max_lag,
        acf,
        pacf,
        band: Z95 / (n as f64).sqrt(),
    })
}

/// Partial autocorrelations `φ_kk`, `k = 1..acf.len()-1`, from an
/// autocorrelation sequence starting at lag 0.
pub fn durbin_levinson(acf: &[f64]) -> Vec<f64> {
    let max_lag = acf.len().saturating_sub(1);
    let mut pacf = Vec::with_capacity(max_lag);
    let mut phi: Vec<f64> = Vec::with_capacity(max_lag);
    let mut v = 1.0;
    for k in 1..=max_lag {
        let num = acf[k] - (1..k).map(|j| phi[j - 1] * acf[k - j]).sum::<f64>();
        let kk = if v > 0.0 { num / v } else { 0.0 };
        let prev = phi.clone();
        for j in 1..k {
            phi[j - 1] = prev[j - 1] - kk * prev[k - j - 1];
        }
        phi.push(kk);
        v *= 1.0 - kk * kk;
        pacf.push(kk);
    }
    pacf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Catalog, Unit};
    use crate::stats::{ols, Matrix};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn series(values: Vec<f64>) -> AnnualSeries {
        AnnualSeries::new("x", Unit::Usd, 1900, values, "").unwrap()
    }

    #[test]
    fn lag_zero_is_one_and_first_pacf_is_first_acf() {
        let fx = Catalog::bundled().series("exchange_rate_1971_2024").unwrap();
        let c = correlogram(&fx, default_max_lag(fx.len())).unwrap();
        assert_eq!(c.acf[0], 1.0);
        assert_eq!(c.pacf[0], c.acf[1]);
        assert!(c.acf.iter().all(|r| r.abs() <= 1.0 + 1e-12));
        assert!((c.band - 1.959964 / 54f64.sqrt()).abs() < 1e-15);
        assert_eq!(c.max_lag, 24);
    }

    #[test]
    fn constant_series_rejected() {
        assert!(matches!(correlogram(&series(vec![3.0; 20]), 5), Err(Error::ConstantSeries)));
    }

    #[test]
    fn too_many_lags_rejected() {
        assert!(matches!(
            correlogram(&series(vec![1.0, 2.0, 4.0, 3.0]), 3),
            Err(Error::InsufficientData(_))
        ));
    }

    #[test]
    fn default_max_lag_rule() {
        assert_eq!(default_max_lag(54), 24);
        assert_eq!(default_max_lag(35), 16);
        assert_eq!(default_max_lag(3), 1);
    }

    #[test]
    fn ar1_monte_carlo() {
        let mut rng = ChaCha8Rng::seed_from_u64(20_470);
        let mut y = Vec::with_capacity(5000);
        let mut prev = 0.0;
        for _ in 0..5500 {
            let e: f64 = StandardNormal.sample(&mut rng);
            prev = 0.8 * prev + e;
            y.push(prev);
        }
        let c = correlogram(&series(y[500..].to_vec()), 5).unwrap();
        assert!((0.75..=0.85).contains(&c.acf[1]), "{}", c.acf[1]);
        assert!((-0.05..=0.05).contains(&c.pacf[1]), "{}", c.pacf[1]);
    }

    #[test]
    fn csv_layout() {
        let c = correlogram(&series(vec![1.0, 3.0, 2.0, 5.0, 4.0]), 2).unwrap();
        let csv = c.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "lag,acf,pacf,band");
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,1,,"));
    }

    /// Last coefficient of the order-k Yule-Walker solution.
    fn pacf_by_yule_walker(acf: &[f64], k: usize) -> f64 {
        let mut a = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                a[i * k + j] = acf[i.abs_diff(j)];
            }
        }
        let b = acf[1..=k].to_vec();
        crate::stats::linalg::solve_dense(a, b).unwrap()[k - 1]
    }

    proptest! {
        #[test]
        fn durbin_levinson_matches_direct_solve(values in prop::collection::vec(-100.0f64..100.0, 12..50)) {
            let s = series(values);
            let max_lag = (s.len() / 2 - 1).min(6);
            let c = correlogram(&s, max_lag).unwrap();
            for k in 1..=max_lag {
                let oracle = pacf_by_yule_walker(&c.acf, k);
                prop_assert!((c.pacf[k - 1] - oracle).abs() < 1e-6, "lag {}: {} vs {}", k, c.pacf[k - 1], oracle);
            }
        }

        #[test]
        fn durbin_levinson_matches_ols_on_lags(values in prop::collection::vec(-100.0f64..100.0, 12..=50)) {
            // Least squares of the demeaned series on its first k lags, with
            // the sample zero-padded on both ends (autocorrelation method),
            // has XᵀX equal to n times the biased autocovariance matrix.
            let s = series(values.clone());
            let max_lag = (s.len() / 2 - 1).min(6);
            let c = correlogram(&s, max_lag).unwrap();
            let n = values.len();
            let m = values.iter().sum::<f64>() / n as f64;
            let dev: Vec<f64> = values.iter().map(|v| v - m).collect();
            let at = |i: isize| if i >= 0 && (i as usize) < n { dev[i as usize] } else { 0.0 };
            for k in 1..=max_lag {
                let rows = n + k;
                let resp: Vec<f64> = (0..rows).map(|t| at(t as isize)).collect();
                let cols: Vec<Vec<f64>> = (1..=k)
                    .map(|j| (0..rows).map(|t| at(t as isize - j as isize)).collect())
                    .collect();
                let fit = ols(&Matrix::from_columns(&cols).unwrap(), &resp).unwrap();
                prop_assert!((fit.coefficients[k - 1] - c.pacf[k - 1]).abs() < 1e-6,
                    "lag {}: {} vs {}", k, fit.coefficients[k - 1], c.pacf[k - 1]);
            }
        }
    }
}
