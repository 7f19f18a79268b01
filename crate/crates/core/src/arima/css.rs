//! Conditional sum of squares.

/// Residuals `e_t` for `t >= p` with pre-sample residuals set to zero.
pub(crate) fn css_residuals(z: &[f64], ar: &[f64], ma: &[f64]) -> Vec<f64> {
    let p = ar.len();
    let n = z.len();
    let mut e = vec![0.0; n];
    for t in p..n {
        let mut v = z[t];
        for (i, a) in ar.iter().enumerate() {
            v -= a * z[t - 1 - i];
        }
        for (j, m) in ma.iter().enumerate() {
            if t > j {
                v -= m * e[t - 1 - j];
            }
        }
        e[t] = v;
    }
    e.split_off(p)
}

/// `-(n−p)/2 (ln 2πσ̂² + 1)` with `σ̂² = SS/(n−p)`; also returns σ̂².
pub(crate) fn css_loglik(residuals: &[f64]) -> (f64, f64) {
    let m = residuals.len() as f64;
    let sigma2 = residuals.iter().map(|e| e * e).sum::<f64>() / m;
    let ll = -0.5 * m * ((2.0 * std::f64::consts::PI * sigma2.max(f64::MIN_POSITIVE)).ln() + 1.0);
    (ll, sigma2)
}

/// Recursive point forecasts of the demeaned process.
pub(crate) fn css_forecast(z: &[f64], residuals: &[f64], ar: &[f64], ma: &[f64], h: usize) -> Vec<f64> {
    let mut zs = z.to_vec();
    let mut es = residuals.to_vec();
    let mut out = Vec::with_capacity(h);
    for _ in 0..h {
        let mut v = 0.0;
        for (i, a) in ar.iter().enumerate() {
            v += a * zs[zs.len() - 1 - i];
        }
        for (j, m) in ma.iter().enumerate() {
            if es.len() > j {
                v += m * es[es.len() - 1 - j];
            }
        }
        zs.push(v);
        es.push(0.0);
        out.push(v);
    }
    out
}
