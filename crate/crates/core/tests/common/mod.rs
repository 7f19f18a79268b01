#![allow(dead_code)]

use boxjen::{AnnualSeries, Unit};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

pub fn noise(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// ARMA(ar, ma) around `mu` after a 200-step burn-in.
pub fn arma(seed: u64, n: usize, ar: &[f64], ma: &[f64], mu: f64) -> Vec<f64> {
    let burn = 200;
    let e = noise(seed, n + burn);
    let mut z = vec![0.0; n + burn];
    for t in 0..n + burn {
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

pub fn cumsum(x: &[f64]) -> Vec<f64> {
    x.iter()
        .scan(0.0, |acc, v| {
            *acc += v;
            Some(*acc)
        })
        .collect()
}

pub fn series(values: Vec<f64>) -> AnnualSeries {
    AnnualSeries::new("sim", Unit::Usd, 1800, values, "simulated").unwrap()
}

/// ADF rejection rates at 5% (constant, no lags) for random walks and for
/// AR(1) with coefficient 0.5, over `draws` series of length `n`.
pub fn adf_rejection_rates(draws: u64, n: usize) -> (f64, f64) {
    use boxjen::unit_root::adf_test;
    use boxjen::{Deterministic, SignificanceLevel};
    let mut size = 0;
    let mut power = 0;
    for seed in 0..draws {
        let rw = series(cumsum(&noise(seed, n)));
        if adf_test(&rw, Deterministic::Constant, 0).unwrap().rejects(SignificanceLevel::Five) {
            size += 1;
        }
        let ar = series(arma(10_000 + seed, n, &[0.5], &[], 0.0));
        if adf_test(&ar, Deterministic::Constant, 0).unwrap().rejects(SignificanceLevel::Five) {
            power += 1;
        }
    }
    (size as f64 / draws as f64, power as f64 / draws as f64)
}

/// Largest absolute gap between Durbin-Levinson PACF and the last OLS
/// coefficient of `y_t` on `k` zero-padded lags.
pub fn pacf_ols_gap(x: &[f64], max_lag: usize) -> f64 {
    use boxjen::stats::{correlogram, ols, Matrix};
    let c = correlogram(&series(x.to_vec()), max_lag).unwrap();
    let n = x.len();
    let m = x.iter().sum::<f64>() / n as f64;
    let z: Vec<f64> = x.iter().map(|v| v - m).collect();
    let mut gap: f64 = 0.0;
    for k in 1..=max_lag {
        // autocorrelation method: pad k zeros on both ends
        let rows = n + k;
        let at = |i: isize| if i >= 0 && (i as usize) < n { z[i as usize] } else { 0.0 };
        let mut data = Vec::with_capacity(rows * k);
        let mut y = Vec::with_capacity(rows);
        for t in 0..rows as isize {
            y.push(at(t));
            for j in 1..=k as isize {
                data.push(at(t - j));
            }
        }
        let fit = ols(&Matrix::from_row_major(rows, k, data).unwrap(), &y).unwrap();
        gap = gap.max((fit.coefficients[k - 1] - c.pacf[k - 1]).abs());
    }
    gap
}
