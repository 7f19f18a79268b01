//! Lag-polynomial helpers. AR coefficients follow `1 - φ₁B - … - φ_pB^p`,
//! MA coefficients follow `1 + θ₁B + … + θ_qB^q`.

/// Maps unconstrained reals into (-1, 1).
fn squash(x: f64) -> f64 {
    x / (1.0 + x * x).sqrt()
}

fn unsquash(r: f64) -> f64 {
    r / (1.0 - r * r).sqrt()
}

/// AR coefficients from partial autocorrelations (Durbin-Levinson step-up).
pub(crate) fn pacf_to_ar(partials: &[f64]) -> Vec<f64> {
    let mut phi: Vec<f64> = Vec::with_capacity(partials.len());
    for (k, &r) in partials.iter().enumerate() {
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = prev[j] - r * prev[k - 1 - j];
        }
        phi.push(r);
    }
    phi
}

/// Partial autocorrelations of an AR polynomial (step-down). `None` when the
/// polynomial has a root on or inside the unit circle.
pub(crate) fn ar_to_pacf(ar: &[f64]) -> Option<Vec<f64>> {
    let mut phi = ar.to_vec();
    let mut partials = vec![0.0; ar.len()];
    for k in (0..ar.len()).rev() {
        let r = phi[k];
        if !(r.abs() < 1.0) {
            return None;
        }
        partials[k] = r;
        let denom = 1.0 - r * r;
        let prev = phi.clone();
        for j in 0..k {
            phi[j] = (prev[j] + r * prev[k - 1 - j]) / denom;
        }
        phi.truncate(k);
    }
    Some(partials)
}

/// True when all roots of `1 - φ₁z - …` lie outside the unit circle.
pub fn is_stationary(ar: &[f64]) -> bool {
    ar_to_pacf(ar).is_some()
}

/// True when all roots of `1 + θ₁z + …` lie outside the unit circle.
pub fn is_invertible(ma: &[f64]) -> bool {
    let neg: Vec<f64> = ma.iter().map(|t| -t).collect();
    ar_to_pacf(&neg).is_some()
}

pub(crate) fn constrain_ar(u: &[f64]) -> Vec<f64> {
    pacf_to_ar(&u.iter().map(|&x| squash(x)).collect::<Vec<_>>())
}

pub(crate) fn constrain_ma(u: &[f64]) -> Vec<f64> {
    constrain_ar(u).into_iter().map(|t| -t).collect()
}

pub(crate) fn unconstrain_ar(ar: &[f64]) -> Option<Vec<f64>> {
    ar_to_pacf(ar).map(|p| p.into_iter().map(unsquash).collect())
}

pub(crate) fn unconstrain_ma(ma: &[f64]) -> Option<Vec<f64>> {
    unconstrain_ar(&ma.iter().map(|t| -t).collect::<Vec<_>>())
}

/// Largest absolute partial autocorrelation implied by unconstrained values.
pub(crate) fn max_partial(u: &[f64]) -> f64 {
    u.iter().map(|&x| squash(x).abs()).fold(0.0, f64::max)
}

/// AR coefficients of `φ(B)(1 - B)^d` in the `1 - Σ φ*_i B^i` convention.
pub(crate) fn integrated_ar(ar: &[f64], d: usize) -> Vec<f64> {
    // full polynomial coefficients c_0 = 1, c_i = -φ_i
    let mut poly = vec![1.0];
    poly.extend(ar.iter().map(|a| -a));
    for _ in 0..d {
        let mut next = vec![0.0; poly.len() + 1];
        for (i, c) in poly.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c;
        }
        poly = next;
    }
    poly[1..].iter().map(|c| -c).collect()
}

/// First `h` ψ-weights of `θ(B) / φ*(B)`.
pub fn psi_weights(ar: &[f64], ma: &[f64], h: usize) -> Vec<f64> {
    let mut psi = Vec::with_capacity(h);
    for j in 0..h {
        if j == 0 {
            psi.push(1.0);
            continue;
        }
        let mut v = ma.get(j - 1).copied().unwrap_or(0.0);
        for (i, a) in ar.iter().enumerate().take(j) {
            v += a * psi[j - 1 - i];
        }
        psi.push(v);
    }
    psi
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn integrated_ar_examples() {
        assert_eq!(integrated_ar(&[], 1), vec![1.0]);
        assert_eq!(integrated_ar(&[], 2), vec![2.0, -1.0]);
        // (1 - 0.5B)(1 - B) = 1 - 1.5B + 0.5B²
        assert_eq!(integrated_ar(&[0.5], 1), vec![1.5, -0.5]);
    }

    #[test]
    fn psi_weights_random_walk_and_ma() {
        assert_eq!(psi_weights(&[1.0], &[], 4), vec![1.0; 4]);
        assert_eq!(psi_weights(&[], &[0.4], 3), vec![1.0, 0.4, 0.0]);
        // ARIMA(0,2,1): φ* = (2, -1), θ = -0.5 -> 1, 1.5, 2, 2.5
        assert_eq!(psi_weights(&[2.0, -1.0], &[-0.5], 4), vec![1.0, 1.5, 2.0, 2.5]);
    }

    #[test]
    fn stationarity_checks() {
        assert!(is_stationary(&[0.5]));
        assert!(!is_stationary(&[1.0]));
        assert!(!is_stationary(&[0.5, 0.6]));
        assert!(is_stationary(&[1.2, -0.5]));
        assert!(is_invertible(&[-0.9]));
        assert!(!is_invertible(&[-1.0]));
    }

    proptest! {
        #[test]
        fn transform_round_trip(u in prop::collection::vec(-3.0f64..3.0, 0..5)) {
            let ar = constrain_ar(&u);
            prop_assert!(is_stationary(&ar));
            let back = unconstrain_ar(&ar).unwrap();
            for (a, b) in u.iter().zip(&back) {
                prop_assert!((a - b).abs() < 1e-6);
            }
            let ma = constrain_ma(&u);
            prop_assert!(is_invertible(&ma));
        }
    }
}
