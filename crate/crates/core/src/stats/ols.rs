use serde::Serialize;

use super::linalg::householder_qr;
use crate::error::{Error, Result};

/// Dense row-major design matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn from_row_major(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Parameter(format!(
                "matrix data has {} entries, expected {rows}x{cols}",
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from equally long columns.
    pub fn from_columns(columns: &[Vec<f64>]) -> Result<Self> {
        let cols = columns.len();
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Parameter("columns differ in length".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            data.extend(columns.iter().map(|c| c[i]));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegressionFit {
    pub coefficients: Vec<f64>,
    pub standard_errors: Vec<f64>,
    pub residuals: Vec<f64>,
    pub rss: f64,
    pub n: usize,
    pub k: usize,
}

impl RegressionFit {
    /// `rss / (n - k)`.
    pub fn s2(&self) -> f64 {
        self.rss / (self.n - self.k) as f64
    }
}

const RANK_TOL: f64 = 1e-10;

/// Least squares by Householder QR. Standard errors come from
/// `s² (XᵀX)⁻¹` with `s² = rss / (n - k)`.
pub fn ols(design: &Matrix, response: &[f64]) -> Result<RegressionFit> {
    let (n, k) = (design.rows(), design.cols());
    if response.len() != n {
        return Err(Error::Parameter(format!(
            "response has {} rows, design has {n}",
            response.len()
        )));
    }
    if k == 0 || n <= k {
        return Err(Error::InsufficientData(format!(
            "{n} observations for {k} regressors"
        )));
    }
    let qr = householder_qr(design, response, RANK_TOL).map_err(|column| Error::Singular { column })?;
    let coefficients = qr.solve();
    let residuals: Vec<f64> = (0..n)
        .map(|i| response[i] - (0..k).map(|j| design.get(i, j) * coefficients[j]).sum::<f64>())
        .collect();
    let rss: f64 = residuals.iter().map(|e| e * e).sum();
    let s2 = rss / (n - k) as f64;
    let cov = qr.xtx_inverse();
    let standard_errors = (0..k).map(|j| (s2 * cov[j * k + j]).sqrt()).collect();
    Ok(RegressionFit {
        coefficients,
        standard_errors,
        residuals,
        rss,
        n,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stats::linalg::solve_dense;
    use proptest::prelude::*;

    #[test]
    fn exact_line() {
        let x: Vec<f64> = (0..10).map(f64::from).collect();
        let y: Vec<f64> = x.iter().map(|x| 2.0 + 3.0 * x).collect();
        let fit = ols(&Matrix::from_columns(&[vec![1.0; 10], x]).unwrap(), &y).unwrap();
        assert!((fit.coefficients[0] - 2.0).abs() < 1e-12);
        assert!((fit.coefficients[1] - 3.0).abs() < 1e-12);
        assert!(fit.rss < 1e-20);
    }

    #[test]
    fn intercept_only_is_mean() {
        let y = [1.0, 4.0, 2.0, 9.0];
        let fit = ols(&Matrix::from_columns(&[vec![1.0; 4]]).unwrap(), &y).unwrap();
        assert!((fit.coefficients[0] - 4.0).abs() < 1e-12);
        // s² / n for the mean: var = (9+0+4+25)/3 = 38/3
        assert!((fit.standard_errors[0] - (38.0_f64 / 3.0 / 4.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn duplicated_column_is_singular() {
        let x = vec![1.0, 2.0, 3.0, 5.0];
        let d = Matrix::from_columns(&[vec![1.0; 4], x.clone(), x]).unwrap();
        assert!(matches!(ols(&d, &[1.0, 2.0, 3.0, 4.0]), Err(Error::Singular { column: 2 })));
    }

    #[test]
    fn too_few_rows() {
        let d = Matrix::from_columns(&[vec![1.0; 2], vec![1.0, 2.0]]).unwrap();
        assert!(matches!(ols(&d, &[1.0, 2.0]), Err(Error::InsufficientData(_))));
    }

    fn normal_equations(d: &Matrix, y: &[f64]) -> Vec<f64> {
        let k = d.cols();
        let mut xtx = vec![0.0; k * k];
        let mut xty = vec![0.0; k];
        for i in 0..d.rows() {
            for a in 0..k {
                xty[a] += d.get(i, a) * y[i];
                for b in 0..k {
                    xtx[a * k + b] += d.get(i, a) * d.get(i, b);
                }
            }
        }
        solve_dense(xtx, xty).unwrap()
    }

    proptest! {
        #[test]
        fn matches_normal_equations(
            cols in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 40), 1..5),
            y in prop::collection::vec(-10.0f64..10.0, 40),
        ) {
            let mut columns = vec![vec![1.0; 40]];
            columns.extend(cols);
            let d = Matrix::from_columns(&columns).unwrap();
            let fit = ols(&d, &y).unwrap();
            let oracle = normal_equations(&d, &y);
            for (a, b) in fit.coefficients.iter().zip(&oracle) {
                prop_assert!((a - b).abs() < 1e-8, "{} vs {}", a, b);
            }
            // residuals orthogonal to each column
            let scale = y.iter().map(|v| v.abs()).fold(1.0, f64::max) * 40.0;
            for c in &columns {
                let dot: f64 = c.iter().zip(&fit.residuals).map(|(a, b)| a * b).sum();
                prop_assert!(dot.abs() < 1e-8 * scale);
            }
            let rss: f64 = fit.residuals.iter().map(|e| e * e).sum();
            prop_assert!((rss - fit.rss).abs() <= 1e-12 * rss.max(1.0));
        }
    }
}
