//! Numerical kernels shared by the unit-root tests and ARIMA estimation.

mod correlogram;
mod difference;
pub(crate) mod linalg;
mod lrv;
mod ols;

pub use correlogram::{correlogram, default_max_lag, durbin_levinson, Correlogram, Z95};
pub use difference::{difference, difference_values};
pub use lrv::{auto_bandwidth, newey_west_lrv};
pub use ols::{ols, Matrix, RegressionFit};

pub(crate) fn mean(x: &[f64]) -> f64 {
    x.iter().sum::<f64>() / x.len() as f64
}
