//! Dickey-Fuller critical values and approximate p-values.
//!
//! Critical values default to linear interpolation in the sample size over
//! Fuller's finite-sample tables (the convention used by Stata's `dfuller`
//! and `pperron`). MacKinnon's 2010 response surfaces are available as an
//! alternative for the τ statistic. p-values use MacKinnon's 1994
//! approximation for τ.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use super::{Deterministic, SignificanceLevel};
use crate::error::{Error, Result};

/// Which statistic the critical value is for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Statistic {
    /// Studentized coefficient, Z(t).
    Tau,
    /// Normalized bias `n(ρ̂ - 1)`, Z(rho).
    Rho,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CriticalSource {
    #[default]
    FullerTable,
    MacKinnon2010,
}

/// `(cv1, cv5, cv10)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalValues {
    pub cv1: f64,
    pub cv5: f64,
    pub cv10: f64,
}

impl CriticalValues {
    pub fn at(&self, level: SignificanceLevel) -> f64 {
        match level {
            SignificanceLevel::One => self.cv1,
            SignificanceLevel::Five => self.cv5,
            SignificanceLevel::Ten => self.cv10,
        }
    }
}

const SAMPLE_SIZES: [f64; 5] = [25.0, 50.0, 100.0, 250.0, 500.0];

// Rows: n = 25, 50, 100, 250, 500, ∞. Columns: 1%, 5%, 10%.
const TAU_NONE: [[f64; 3]; 6] = [
    [-2.66, -1.95, -1.60],
    [-2.62, -1.95, -1.61],
    [-2.60, -1.95, -1.61],
    [-2.58, -1.95, -1.62],
    [-2.58, -1.95, -1.62],
    [-2.58, -1.95, -1.62],
];
const TAU_CONSTANT: [[f64; 3]; 6] = [
    [-3.75, -3.00, -2.63],
    [-3.58, -2.93, -2.60],
    [-3.51, -2.89, -2.58],
    [-3.46, -2.88, -2.57],
    [-3.44, -2.87, -2.57],
    [-3.43, -2.86, -2.57],
];
const TAU_TREND: [[f64; 3]; 6] = [
    [-4.38, -3.60, -3.24],
    [-4.15, -3.50, -3.18],
    [-4.04, -3.45, -3.15],
    [-3.99, -3.43, -3.13],
    [-3.98, -3.42, -3.13],
    [-3.96, -3.41, -3.12],
];
const RHO_NONE: [[f64; 3]; 6] = [
    [-11.9, -7.3, -5.3],
    [-12.9, -7.7, -5.5],
    [-13.3, -7.9, -5.6],
    [-13.6, -8.0, -5.7],
    [-13.7, -8.0, -5.7],
    [-13.8, -8.1, -5.7],
];
const RHO_CONSTANT: [[f64; 3]; 6] = [
    [-17.2, -12.5, -10.2],
    [-18.9, -13.3, -10.7],
    [-19.8, -13.7, -11.0],
    [-20.3, -14.0, -11.2],
    [-20.5, -14.0, -11.2],
    [-20.7, -14.1, -11.3],
];
const RHO_TREND: [[f64; 3]; 6] = [
    [-22.5, -17.9, -15.6],
    [-25.7, -19.8, -16.8],
    [-27.4, -20.7, -17.5],
    [-28.4, -21.3, -18.0],
    [-28.9, -21.5, -18.1],
    [-29.5, -21.8, -18.3],
];

// MacKinnon (2010), one I(1) variable: cv = b0 + b1/n + b2/n² + b3/n³.
const MACKINNON_2010: [[[f64; 4]; 3]; 3] = [
    [
        [-2.56574, -2.2358, -3.627, 0.0],
        [-1.941, -0.2686, -3.365, 31.223],
        [-1.61682, 0.2656, -2.714, 25.364],
    ],
    [
        [-3.43035, -6.5393, -16.786, -79.433],
        [-2.86154, -2.8903, -4.234, -40.04],
        [-2.56677, -1.5384, -2.809, 0.0],
    ],
    [
        [-3.95877, -9.0531, -28.428, -134.155],
        [-3.41049, -4.3904, -9.036, -45.374],
        [-3.12705, -2.5856, -3.925, -22.38],
    ],
];

fn fuller_table(det: Deterministic, stat: Statistic) -> &'static [[f64; 3]; 6] {
    match (stat, det) {
        (Statistic::Tau, Deterministic::None) => &TAU_NONE,
        (Statistic::Tau, Deterministic::Constant) => &TAU_CONSTANT,
        (Statistic::Tau, Deterministic::ConstantTrend) => &TAU_TREND,
        (Statistic::Rho, Deterministic::None) => &RHO_NONE,
        (Statistic::Rho, Deterministic::Constant) => &RHO_CONSTANT,
        (Statistic::Rho, Deterministic::ConstantTrend) => &RHO_TREND,
    }
}

fn fuller_interpolate(table: &[[f64; 3]; 6], n: usize, col: usize) -> f64 {
    let n = n as f64;
    if n <= SAMPLE_SIZES[0] {
        return table[0][col];
    }
    if n > SAMPLE_SIZES[4] {
        // between n = 500 and the asymptotic row, linear in 1/n
        let inf = table[5][col];
        return inf + (table[4][col] - inf) * SAMPLE_SIZES[4] / n;
    }
    let i = SAMPLE_SIZES.iter().rposition(|&s| s < n).unwrap_or(0);
    let (n0, n1) = (SAMPLE_SIZES[i], SAMPLE_SIZES[i + 1]);
    let (v0, v1) = (table[i][col], table[i + 1][col]);
    v0 + (n - n0) / (n1 - n0) * (v1 - v0)
}

fn mackinnon_surface(det: Deterministic, n: usize, col: usize) -> f64 {
    let b = MACKINNON_2010[det.index()][col];
    let t = n as f64;
    b[0] + b[1] / t + b[2] / (t * t) + b[3] / (t * t * t)
}

/// All three critical values; sample sizes below the smallest table row use
/// that row.
pub fn critical_values(
    det: Deterministic,
    stat: Statistic,
    n: usize,
    source: CriticalSource,
) -> Result<CriticalValues> {
    let cols = [0, 1, 2].map(|col| match source {
        CriticalSource::FullerTable => Ok(fuller_interpolate(fuller_table(det, stat), n, col)),
        CriticalSource::MacKinnon2010 => match stat {
            Statistic::Tau => Ok(mackinnon_surface(det, n.max(1), col)),
            Statistic::Rho => Err(Error::Parameter(
                "response-surface critical values exist only for the τ statistic".into(),
            )),
        },
    });
    let [cv1, cv5, cv10] = cols;
    Ok(CriticalValues {
        cv1: cv1?,
        cv5: cv5?,
        cv10: cv10?,
    })
}

/// Finite-sample τ critical value at one of the tabulated levels.
pub fn dickey_fuller_critical(det: Deterministic, n: usize, level: f64) -> Result<f64> {
    let level = SignificanceLevel::try_from(level)?;
    if n < 20 {
        return Err(Error::InsufficientData(format!(
            "critical values need n >= 20, got {n}"
        )));
    }
    Ok(critical_values(det, Statistic::Tau, n, CriticalSource::FullerTable)?.at(level))
}

struct PValueCoefs {
    max: f64,
    min: f64,
    star: f64,
    small: [f64; 3],
    large: [f64; 4],
}

const PVALUE_COEFS: [PValueCoefs; 3] = [
    PValueCoefs {
        max: f64::INFINITY,
        min: -19.04,
        star: -1.04,
        small: [0.6344, 1.2378, 0.032496],
        large: [0.4797, 0.93557, -0.06999, 0.033066],
    },
    PValueCoefs {
        max: 2.74,
        min: -18.83,
        star: -1.61,
        small: [2.1659, 1.4412, 0.038269],
        large: [1.7339, 0.93202, -0.12745, -0.010368],
    },
    PValueCoefs {
        max: 0.7,
        min: -16.18,
        star: -2.89,
        small: [3.2512, 1.6047, 0.049588],
        large: [2.5261, 0.61654, -0.37956, -0.060285],
    },
];

/// MacKinnon (1994) approximate p-value of a τ statistic.
pub fn mackinnon_pvalue(tau: f64, det: Deterministic) -> f64 {
    let c = &PVALUE_COEFS[det.index()];
    if tau > c.max {
        return 1.0;
    }
    if tau < c.min {
        return 0.0;
    }
    let poly = |coefs: &[f64]| coefs.iter().rev().fold(0.0, |acc, b| acc * tau + b);
    let z = if tau <= c.star { poly(&c.small) } else { poly(&c.large) };
    Normal::standard().cdf(z).clamp(0.0, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn constant_spec_n53() {
        let cv = critical_values(Deterministic::Constant, Statistic::Tau, 53, CriticalSource::FullerTable)
            .unwrap();
        assert!(close(cv.cv1, -3.576, 5e-4), "{cv:?}");
        assert!(close(cv.cv5, -2.928, 5e-4));
        assert!(close(cv.cv10, -2.599, 5e-4));
        assert!(close(dickey_fuller_critical(Deterministic::Constant, 52, 0.01).unwrap(), -3.577, 5e-4));
    }

    #[test]
    fn trend_spec_n61() {
        let d = Deterministic::ConstantTrend;
        assert!(close(dickey_fuller_critical(d, 61, 0.01).unwrap(), -4.126, 5e-4));
        assert!(close(dickey_fuller_critical(d, 61, 0.05).unwrap(), -3.489, 5e-4));
        assert!(close(dickey_fuller_critical(d, 61, 0.10).unwrap(), -3.173, 5e-4));
    }

    #[test]
    fn rho_tables_match_published_rows() {
        let cv = critical_values(Deterministic::Constant, Statistic::Rho, 53, CriticalSource::FullerTable)
            .unwrap();
        assert!(close(cv.cv1, -18.954, 5e-4) && close(cv.cv5, -13.324, 5e-4) && close(cv.cv10, -10.718, 5e-4));
        let cv = critical_values(Deterministic::ConstantTrend, Statistic::Rho, 61, CriticalSource::FullerTable)
            .unwrap();
        assert!(close(cv.cv1, -26.074, 5e-4) && close(cv.cv5, -19.998, 5e-4) && close(cv.cv10, -16.954, 5e-4));
    }

    #[test]
    fn gdp_full_sample_row() {
        // 75 observations, 74 in the regression
        let cv = critical_values(Deterministic::Constant, Statistic::Tau, 74, CriticalSource::FullerTable)
            .unwrap();
        assert!(close(cv.cv1, -3.546, 5e-4) && close(cv.cv5, -2.911, 5e-4) && close(cv.cv10, -2.590, 5e-4));
    }

    #[test]
    fn mackinnon_surface_asymptote() {
        let cv = critical_values(Deterministic::Constant, Statistic::Tau, 1_000_000, CriticalSource::MacKinnon2010)
            .unwrap();
        assert!(close(cv.cv5, -2.86154, 1e-4));
        assert!(critical_values(Deterministic::Constant, Statistic::Rho, 50, CriticalSource::MacKinnon2010).is_err());
    }

    #[test]
    fn ordered_for_every_spec_and_size() {
        for det in [Deterministic::None, Deterministic::Constant, Deterministic::ConstantTrend] {
            for n in [20, 25, 37, 53, 61, 99, 250, 400, 1000, 100_000] {
                for stat in [Statistic::Tau, Statistic::Rho] {
                    let cv = critical_values(det, stat, n, CriticalSource::FullerTable).unwrap();
                    assert!(cv.cv1 < cv.cv5 && cv.cv5 < cv.cv10, "{det:?} {stat:?} {n}");
                }
                let cv = critical_values(det, Statistic::Tau, n, CriticalSource::MacKinnon2010).unwrap();
                assert!(cv.cv1 < cv.cv5 && cv.cv5 < cv.cv10);
            }
        }
    }

    #[test]
    fn unsupported_level_and_small_n() {
        assert!(matches!(dickey_fuller_critical(Deterministic::Constant, 53, 0.025), Err(Error::Parameter(_))));
        assert!(dickey_fuller_critical(Deterministic::Constant, 19, 0.05).is_err());
    }

    #[test]
    fn pvalue_reference_points() {
        // statsmodels.tsa.adfvalues.mackinnonp
        assert!(close(mackinnon_pvalue(1.5669408743524418, Deterministic::Constant), 0.99775492716695, 1e-9));
        assert!(close(mackinnon_pvalue(-2.86, Deterministic::Constant), 0.05, 0.003));
        assert_eq!(mackinnon_pvalue(-30.0, Deterministic::Constant), 0.0);
        assert_eq!(mackinnon_pvalue(3.0, Deterministic::Constant), 1.0);
        let mut prev = 0.0;
        for i in 0..200 {
            let t = -18.0 + i as f64 * 0.1;
            let p = mackinnon_pvalue(t, Deterministic::ConstantTrend);
            assert!((0.0..=1.0).contains(&p) && p + 1e-12 >= prev);
            prev = p;
        }
    }
}
