use crate::error::{Error, Result};

/// Newey-West long-run variance with Bartlett weights:
/// `γ₀ + 2 Σ_{j=1..lags} (1 - j/(lags+1)) γ_j`, `γ_j = (1/n) Σ e_t e_{t-j}`.
pub fn newey_west_lrv(residuals: &[f64], lags: usize) -> Result<f64> {
    let n = residuals.len();
    if lags >= n {
        return Err(Error::Parameter(format!(
            "bandwidth {lags} must be below the sample size {n}"
        )));
    }
    let gamma = |j: usize| {
        residuals[j..]
            .iter()
            .zip(residuals)
            .map(|(a, b)| a * b)
            .sum::<f64>()
            / n as f64
    };
    let mut lrv = gamma(0);
    for j in 1..=lags {
        let w = 1.0 - j as f64 / (lags as f64 + 1.0);
        lrv += 2.0 * w * gamma(j);
    }
    Ok(lrv.max(0.0))
}

/// `floor(4 (n/100)^(2/9))`.
pub fn auto_bandwidth(n: usize) -> usize {
    (4.0 * (n as f64 / 100.0).powf(2.0 / 9.0)).floor() as usize
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_lags_is_mean_square() {
        let e = [1.0, -2.0, 0.5, 3.0];
        let expect = (1.0 + 4.0 + 0.25 + 9.0) / 4.0;
        assert!((newey_west_lrv(&e, 0).unwrap() - expect).abs() < 1e-15);
    }

    #[test]
    fn hand_computed_ones() {
        // γ0 = 1, γ1 = 3/4, w1 = 1/2
        assert!((newey_west_lrv(&[1.0; 4], 1).unwrap() - 1.75).abs() < 1e-15);
    }

    #[test]
    fn lags_at_sample_size_rejected() {
        assert!(matches!(newey_west_lrv(&[1.0, 2.0], 2), Err(Error::Parameter(_))));
    }

    #[test]
    fn bandwidth_rule() {
        assert_eq!(auto_bandwidth(53), 3);
        assert_eq!(auto_bandwidth(100), 4);
        assert_eq!(auto_bandwidth(20), 2);
    }

    proptest! {
        #[test]
        fn nonnegative(e in prop::collection::vec(-1e3f64..1e3, 2..60), lags in 0usize..10) {
            prop_assume!(lags < e.len());
            prop_assert!(newey_west_lrv(&e, lags).unwrap() >= 0.0);
        }
    }
}
