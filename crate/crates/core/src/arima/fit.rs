use serde::Serialize;

use super::css::{css_loglik, css_residuals};
use super::kalman::{concentrated_loglik, StateSpace};
use super::optim::bfgs;
use super::poly::{constrain_ar, constrain_ma, max_partial, unconstrain_ar, unconstrain_ma};
use super::{ArimaOrder, Method};
use crate::error::{Error, Result};
use crate::series::AnnualSeries;
use crate::stats::{difference_values, mean};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FitOptions {
    pub method: Method,
    /// Estimate on the PACF scale so AR/MA polynomials stay
    /// stationary/invertible.
    pub enforce: bool,
    /// Extra starting points tried after the first, at most 3.
    pub restarts: usize,
}

impl Default for FitOptions {
    fn default() -> Self {
        Self {
            method: Method::ExactMle,
            enforce: true,
            restarts: 3,
        }
    }
}

impl FitOptions {
    pub fn with_method(method: Method) -> Self {
        Self { method, ..Self::default() }
    }
}

/// Estimated ARIMA model. Immutable; carries the series it was fitted to so
/// it can forecast.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArimaFit {
    pub order: ArimaOrder,
    pub drift: bool,
    pub ar: Vec<f64>,
    pub ma: Vec<f64>,
    /// Mean of the differenced series (drift per period when `d >= 1`).
    pub mu: f64,
    pub sigma2: f64,
    pub loglik: f64,
    pub aic: f64,
    pub bic: f64,
    pub n_eff: usize,
    pub residuals: Vec<f64>,
    pub method: Method,
    /// Zero innovation variance: the likelihood is unbounded and intervals
    /// collapse to points.
    pub degenerate: bool,
    pub converged: bool,
    #[serde(skip)]
    pub(crate) series: AnnualSeries,
}

impl ArimaFit {
    /// `p + q + drift + 1`.
    pub fn parameter_count(&self) -> usize {
        self.order.p + self.order.q + usize::from(self.drift) + 1
    }

    pub fn series(&self) -> &AnnualSeries {
        &self.series
    }

    /// Differenced observations the model was estimated on.
    pub fn differenced(&self) -> Vec<f64> {
        difference_values(self.series.values(), self.order.d)
    }
}

/// `(−2ℓ + 2k, −2ℓ + k ln n_eff)`.
pub fn information_criteria(fit: &ArimaFit) -> (f64, f64) {
    criteria(fit.loglik, fit.parameter_count(), fit.n_eff)
}

fn criteria(loglik: f64, k: usize, n_eff: usize) -> (f64, f64) {
    let k = k as f64;
    (-2.0 * loglik + 2.0 * k, -2.0 * loglik + k * (n_eff as f64).ln())
}

/// Exact Gaussian log-likelihood of `w` under ARMA(ar, ma) with mean `mu`,
/// with σ² at its maximising value. `None` when the covariance is undefined.
pub fn exact_log_likelihood(w: &[f64], ar: &[f64], ma: &[f64], mu: f64) -> Option<f64> {
    let z: Vec<f64> = w.iter().map(|v| v - mu).collect();
    let f = StateSpace::new(ar, ma).filter(&z)?;
    Some(concentrated_loglik(z.len(), f.sigma2, f.sum_log_f))
}

/// Fits with the default options (stationarity enforced, 3 restarts).
pub fn fit(series: &AnnualSeries, order: ArimaOrder, drift: bool, method: Method) -> Result<ArimaFit> {
    fit_with(series, order, drift, &FitOptions::with_method(method))
}

pub fn fit_with(
    series: &AnnualSeries,
    order: ArimaOrder,
    drift: bool,
    options: &FitOptions,
) -> Result<ArimaFit> {
    let order = ArimaOrder::new(order.p, order.d, order.q)?;
    let w = difference_values(series.values(), order.d);
    let needed = order.p + order.q + 5;
    if w.len() < needed {
        return Err(Error::InsufficientData(format!(
            "ARIMA{order} needs {needed} observations after differencing, got {}",
            w.len()
        )));
    }
    if order.p == 0 && order.q == 0 {
        return Ok(closed_form(series, order, drift, options.method, &w));
    }

    let scale = (w.iter().map(|v| v * v).sum::<f64>() / w.len() as f64).sqrt();
    if scale == 0.0 {
        return Ok(zero_series_fit(series, order, drift, options.method, w.len()));
    }
    let zs: Vec<f64> = w.iter().map(|v| v / scale).collect();
    let model = Model {
        p: order.p,
        q: order.q,
        drift,
        enforce: options.enforce,
    };

    let css_obj = |x: &[f64]| {
        let (ar, ma, mu) = model.decode(x);
        let z: Vec<f64> = zs.iter().map(|v| v - mu).collect();
        -css_loglik(&css_residuals(&z, &ar, &ma)).0
    };
    let exact_obj = |x: &[f64]| {
        let (ar, ma, mu) = model.decode(x);
        let z: Vec<f64> = zs.iter().map(|v| v - mu).collect();
        match StateSpace::new(&ar, &ma).filter(&z) {
            Some(f) => -concentrated_loglik(z.len(), f.sigma2.max(1e-300), f.sum_log_f),
            None => f64::INFINITY,
        }
    };

    let base = model.start(mean(&zs));
    let css_start = bfgs(css_obj, &base);
    let mut starts = Vec::with_capacity(4);
    match options.method {
        Method::Css => starts.push(base.clone()),
        Method::ExactMle => {
            if let Some(m) = &css_start {
                if let Some(x) = model.recode(m) {
                    starts.push(x);
                }
            }
            starts.push(base.clone());
        }
    }
    for shift in [0.5, -0.5, 0.25].into_iter().take(options.restarts.min(3)) {
        let mut x = base.clone();
        x.iter_mut().take(order.p + order.q).for_each(|v| *v = shift);
        starts.push(x);
    }

    let objective: &dyn Fn(&[f64]) -> f64 = match options.method {
        Method::Css => &css_obj,
        Method::ExactMle => &exact_obj,
    };
    let mut best: Option<super::optim::Minimum> = None;
    for start in &starts {
        if let Some(m) = bfgs(objective, start) {
            if best.as_ref().is_none_or(|b| m.value < b.value) {
                best = Some(m);
            }
        }
    }
    let best = best.ok_or_else(|| {
        Error::NonConvergence(format!("no finite likelihood for ARIMA{order} from any start"))
    })?;

    if options.enforce {
        if max_partial(&best.x[..order.p]) > 1.0 - 1e-8 {
            return Err(Error::NonInvertible("AR"));
        }
        if max_partial(&best.x[order.p..order.p + order.q]) > 1.0 - 1e-8 {
            return Err(Error::NonInvertible("MA"));
        }
    }

    let (ar, ma, mu_std) = model.decode(&best.x);
    let z: Vec<f64> = zs.iter().map(|v| v - mu_std).collect();
    let (loglik_std, sigma2_std, residuals, n_eff) = match options.method {
        Method::Css => {
            let e = css_residuals(&z, &ar, &ma);
            let (ll, s2) = css_loglik(&e);
            let n = e.len();
            (ll, s2, e, n)
        }
        Method::ExactMle => {
            let f = StateSpace::new(&ar, &ma)
                .filter(&z)
                .ok_or_else(|| Error::NonConvergence(format!("ARIMA{order}: filter failed at optimum")))?;
            let ll = concentrated_loglik(z.len(), f.sigma2.max(1e-300), f.sum_log_f);
            (ll, f.sigma2, f.innovations, z.len())
        }
    };
    let degenerate = sigma2_std <= 1e-12;
    let loglik = if degenerate {
        f64::INFINITY
    } else {
        loglik_std - n_eff as f64 * scale.ln()
    };
    let k = order.p + order.q + usize::from(drift) + 1;
    let (aic, bic) = criteria(loglik, k, n_eff);
    Ok(ArimaFit {
        order,
        drift,
        ar,
        ma,
        mu: mu_std * scale,
        sigma2: sigma2_std * scale * scale,
        loglik,
        aic,
        bic,
        n_eff,
        residuals: residuals.into_iter().map(|e| e * scale).collect(),
        method: options.method,
        degenerate,
        converged: best.converged,
        series: series.clone(),
    })
}

/// `μ̂` = sample mean (or 0), `σ̂² = (1/n) Σ (w − μ̂)²`,
/// `ℓ = −n/2 (ln 2πσ̂² + 1)`.
fn closed_form(series: &AnnualSeries, order: ArimaOrder, drift: bool, method: Method, w: &[f64]) -> ArimaFit {
    let n = w.len();
    let mu = if drift { mean(w) } else { 0.0 };
    let residuals: Vec<f64> = w.iter().map(|v| v - mu).collect();
    let sigma2 = residuals.iter().map(|e| e * e).sum::<f64>() / n as f64;
    let scale2 = w.iter().map(|v| v * v).sum::<f64>() / n as f64;
    let degenerate = sigma2 <= 1e-24 * scale2.max(f64::MIN_POSITIVE) || sigma2 == 0.0;
    let loglik = if degenerate {
        f64::INFINITY
    } else {
        -0.5 * n as f64 * ((2.0 * std::f64::consts::PI * sigma2).ln() + 1.0)
    };
    let k = usize::from(drift) + 1;
    let (aic, bic) = criteria(loglik, k, n);
    ArimaFit {
        order,
        drift,
        ar: Vec::new(),
        ma: Vec::new(),
        mu,
        sigma2: if degenerate { 0.0 } else { sigma2 },
        loglik,
        aic,
        bic,
        n_eff: n,
        residuals,
        method,
        degenerate,
        converged: true,
        series: series.clone(),
    }
}

fn zero_series_fit(series: &AnnualSeries, order: ArimaOrder, drift: bool, method: Method, n: usize) -> ArimaFit {
    let k = order.p + order.q + usize::from(drift) + 1;
    let (aic, bic) = criteria(f64::INFINITY, k, n);
    ArimaFit {
        order,
        drift,
        ar: vec![0.0; order.p],
        ma: vec![0.0; order.q],
        mu: 0.0,
        sigma2: 0.0,
        loglik: f64::INFINITY,
        aic,
        bic,
        n_eff: n,
        residuals: vec![0.0; n],
        method,
        degenerate: true,
        converged: true,
        series: series.clone(),
    }
}

/// Parameter layout `[ar (p), ma (q), mu (if drift)]`, in units of the
/// rescaled series.
struct Model {
    p: usize,
    q: usize,
    drift: bool,
    enforce: bool,
}

impl Model {
    fn decode(&self, x: &[f64]) -> (Vec<f64>, Vec<f64>, f64) {
        let (ar_x, rest) = x.split_at(self.p);
        let (ma_x, mu_x) = rest.split_at(self.q);
        let mu = if self.drift { mu_x[0] } else { 0.0 };
        if self.enforce {
            (constrain_ar(ar_x), constrain_ma(ma_x), mu)
        } else {
            (ar_x.to_vec(), ma_x.to_vec(), mu)
        }
    }

    fn start(&self, mean: f64) -> Vec<f64> {
        let mut x = vec![0.0; self.p + self.q];
        if self.drift {
            x.push(mean);
        }
        x
    }

    /// Re-expresses a CSS optimum as a start for the exact likelihood.
    fn recode(&self, m: &super::optim::Minimum) -> Option<Vec<f64>> {
        if !m.value.is_finite() {
            return None;
        }
        if self.enforce {
            // already on the unconstrained scale; guard against saturation
            let (ar, ma, _) = self.decode(&m.x);
            unconstrain_ar(&ar)?;
            unconstrain_ma(&ma)?;
        }
        Some(m.x.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{Catalog, Unit};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};

    fn order(p: usize, d: usize, q: usize) -> ArimaOrder {
        ArimaOrder::new(p, d, q).unwrap()
    }

    fn simulate_arma(seed: u64, n: usize, ar: &[f64], ma: &[f64], mu: f64) -> Vec<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let burn = 200;
        let mut z = vec![0.0; n + burn];
        let mut e = vec![0.0; n + burn];
        for t in 0..n + burn {
            e[t] = StandardNormal.sample(&mut rng);
            let mut v = e[t];
            for (i, a) in ar.iter().enumerate() {
                if t > i {
                    v += a * z[t - 1 - i];
                }
            }
            for (j, m) in ma.iter().enumerate() {
                if t > j {
                    v += m * e[t - 1 - j];
                }
            }
            z[t] = v;
        }
        z[burn..].iter().map(|v| v + mu).collect()
    }

    fn series(values: Vec<f64>) -> AnnualSeries {
        AnnualSeries::new("x", Unit::Usd, 1900, values, "").unwrap()
    }

    #[test]
    fn exchange_rate_random_walk_with_drift() {
        let fx = Catalog::bundled().series("exchange_rate_1971_2024").unwrap();
        let f = fit(&fx, order(0, 1, 0), true, Method::ExactMle).unwrap();
        assert!((f.mu - (82.7897 - 7.5578) / 53.0).abs() < 1e-12);
        assert!((f.mu - 1.419470).abs() < 1e-6);
        assert_eq!(f.n_eff, 53);
        assert_eq!(f.parameter_count(), 2);
    }

    #[test]
    fn constant_increment_is_degenerate() {
        let s = series((1..=20).map(|t| 5.0 * t as f64).collect());
        let f = fit(&s, order(0, 1, 0), true, Method::ExactMle).unwrap();
        assert_eq!(f.mu, 5.0);
        assert_eq!(f.sigma2, 0.0);
        assert!(f.degenerate);
    }

    #[test]
    fn white_noise_closed_form() {
        let y = vec![1.0, -2.0, 3.0, 0.5, -1.5, 2.0];
        let f = fit(&series(y.clone()), order(0, 0, 0), false, Method::ExactMle).unwrap();
        let s2 = y.iter().map(|v| v * v).sum::<f64>() / 6.0;
        let ll = -3.0 * ((2.0 * std::f64::consts::PI * s2).ln() + 1.0);
        assert_eq!(f.mu, 0.0);
        assert!((f.loglik - ll).abs() < 1e-12);
        assert!((f.aic - (-2.0 * ll + 2.0)).abs() < 1e-12);
    }

    #[test]
    fn insufficient_data_error() {
        let s = series(vec![1.0, 2.0, 4.0, 3.0, 5.0, 6.0]);
        assert!(matches!(fit(&s, order(1, 1, 1), false, Method::ExactMle), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn ar1_recovers_coefficient() {
        let y = simulate_arma(7, 800, &[0.6], &[], 2.0);
        let f = fit(&series(y), order(1, 0, 0), true, Method::ExactMle).unwrap();
        assert!((f.ar[0] - 0.6).abs() < 0.08, "{:?}", f.ar);
        assert!((f.mu - 2.0).abs() < 0.3);
        assert!((f.sigma2 - 1.0).abs() < 0.15);
        let (aic, bic) = information_criteria(&f);
        assert_eq!((aic, bic), (f.aic, f.bic));
    }

    #[test]
    fn ma1_recovers_coefficient() {
        let y = simulate_arma(8, 800, &[], &[-0.5], 0.0);
        let f = fit(&series(y), order(0, 0, 1), false, Method::ExactMle).unwrap();
        assert!((f.ma[0] + 0.5).abs() < 0.08, "{:?}", f.ma);
    }

    #[test]
    fn exact_fit_maximises_its_likelihood() {
        let y = simulate_arma(9, 150, &[0.5, -0.2], &[0.3], 0.0);
        let f = fit(&series(y.clone()), order(2, 0, 1), false, Method::ExactMle).unwrap();
        let at_opt = exact_log_likelihood(&y, &f.ar, &f.ma, 0.0).unwrap();
        assert!((at_opt - f.loglik).abs() < 1e-9);
        for (dar, dma) in [(0.02, 0.0), (-0.02, 0.0), (0.0, 0.02), (0.0, -0.02)] {
            let ar = vec![f.ar[0] + dar, f.ar[1]];
            let ma = vec![f.ma[0] + dma];
            assert!(exact_log_likelihood(&y, &ar, &ma, 0.0).unwrap() <= at_opt + 1e-9);
        }
    }

    #[test]
    fn deterministic_across_calls() {
        let y = simulate_arma(10, 120, &[0.4], &[0.2], 1.0);
        let s = series(y);
        let a = fit(&s, order(1, 0, 1), true, Method::ExactMle).unwrap();
        let b = fit(&s, order(1, 0, 1), true, Method::ExactMle).unwrap();
        assert_eq!(a, b);
    }
}
