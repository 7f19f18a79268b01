use serde::{Deserialize, Serialize};

use super::adf::df_regression;
use super::critical::{critical_values, mackinnon_pvalue, CriticalSource, Statistic};
use super::report::{TestKind, UnitRootReport};
use super::Deterministic;
use crate::error::Result;
use crate::series::AnnualSeries;
use crate::stats::{auto_bandwidth, newey_west_lrv};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bandwidth {
    /// `floor(4 (n/100)^(2/9))` with `n` the regression sample size.
    #[default]
    Auto,
    Fixed(usize),
}

/// Phillips-Perron test: the zero-lag Dickey-Fuller regression with the
/// Newey-West correction of both Z(rho) and Z(t).
pub fn pp_test(series: &AnnualSeries, det: Deterministic, bandwidth: Bandwidth) -> Result<UnitRootReport> {
    pp_with_source(series, det, bandwidth, CriticalSource::default())
}

/// As [`pp_test`] with a choice of critical-value source.
pub fn pp_with_source(
    series: &AnnualSeries,
    det: Deterministic,
    bandwidth: Bandwidth,
    source: CriticalSource,
) -> Result<UnitRootReport> {
    let reg = df_regression(series.values(), det, 0, 0)?;
    let n = reg.nobs as f64;
    let lags = match bandwidth {
        Bandwidth::Auto => auto_bandwidth(reg.nobs),
        Bandwidth::Fixed(l) => l,
    };
    let fit = &reg.fit;
    let bias = fit.coefficients[0];
    let se = fit.standard_errors[0];
    let s2 = fit.s2();
    let gamma0 = fit.rss / n;
    let lrv = newey_west_lrv(&fit.residuals, lags)?;
    let excess = lrv - gamma0;

    let z_rho = n * bias - 0.5 * (n * n * se * se / s2) * excess;
    let z_t = (gamma0 / lrv).sqrt() * bias / se - 0.5 * excess / lrv.sqrt() * (n * se / s2.sqrt());

    let critical = critical_values(det, Statistic::Tau, reg.nobs, source)?;
    let rho_critical = match source {
        CriticalSource::FullerTable => Some(critical_values(det, Statistic::Rho, reg.nobs, source)?),
        CriticalSource::MacKinnon2010 => None,
    };
    Ok(UnitRootReport::new(
        TestKind::Pp,
        det,
        lags,
        reg.nobs,
        1.0 + bias,
        z_t,
        Some(z_rho),
        mackinnon_pvalue(z_t, det),
        critical,
        rho_critical,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Catalog, Unit};
    use crate::stats::difference;
    use crate::unit_root::{adf_test, SignificanceLevel};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn fx() -> AnnualSeries {
        Catalog::bundled().series("exchange_rate_1971_2024").unwrap()
    }

    #[test]
    fn exchange_rate_level() {
        let r = pp_test(&fx(), Deterministic::Constant, Bandwidth::Auto).unwrap();
        assert_eq!(r.lags_or_bandwidth, 3);
        assert!((r.z_rho.unwrap() - 1.159).abs() < 0.02, "{:?}", r.z_rho);
        assert!((r.z_t - 1.393).abs() < 0.02, "{}", r.z_t);
        assert!((r.p_value - 0.9971).abs() < 0.005, "{}", r.p_value);
    }

    #[test]
    fn exchange_rate_difference() {
        let d = difference(&fx(), 1).unwrap();
        let r = pp_test(&d, Deterministic::Constant, Bandwidth::Auto).unwrap();
        assert!((r.z_rho.unwrap() + 48.942).abs() < 0.1);
        assert!((r.z_t + 6.408).abs() < 0.02);
        let rho_cv = r.rho_critical.unwrap();
        assert!((rho_cv.cv1 + 18.936).abs() < 1e-3);
    }

    #[test]
    fn white_noise_rejects_at_one_percent() {
        let mut rng = ChaCha8Rng::seed_from_u64(500);
        let e: Vec<f64> = (0..500).map(|_| StandardNormal.sample(&mut rng)).collect();
        let s = AnnualSeries::new("wn", Unit::Usd, 1, e, "").unwrap();
        let r = pp_test(&s, Deterministic::Constant, Bandwidth::Auto).unwrap();
        assert!(r.rejects(SignificanceLevel::One), "{}", r.z_t);
    }

    proptest! {
        #[test]
        fn zero_bandwidth_matches_adf(values in prop::collection::vec(-100.0f64..100.0, 25..80), trend in any::<bool>()) {
            let s = AnnualSeries::new("x", Unit::Usd, 1, values, "").unwrap();
            let det = if trend { Deterministic::ConstantTrend } else { Deterministic::Constant };
            let adf = adf_test(&s, det, 0).unwrap();
            let pp = pp_test(&s, det, Bandwidth::Fixed(0)).unwrap();
            prop_assert!((adf.z_t - pp.z_t).abs() < 1e-9);
        }
    }
}
