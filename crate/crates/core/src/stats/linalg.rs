//! Small dense linear algebra: Householder QR and pivoted Gaussian
//! elimination. Sizes here are tiny (at most a few dozen columns).

use super::ols::Matrix;

pub(crate) struct Qr {
    /// Upper-triangular factor, `k x k`, row-major.
    pub r: Vec<f64>,
    /// `Qᵀ y` restricted to the first `k` rows.
    pub qty: Vec<f64>,
    pub k: usize,
}

/// Householder QR of `x` applied to `y` at the same time. Returns the
/// column index at which the diagonal of R falls below `tol` relative to the
/// largest column norm.
pub(crate) fn householder_qr(x: &Matrix, y: &[f64], tol: f64) -> Result<Qr, usize> {
    let (n, k) = (x.rows(), x.cols());
    let mut a = x.data().to_vec();
    let mut b = y.to_vec();
    let scale = (0..k)
        .map(|j| (0..n).map(|i| a[i * k + j].powi(2)).sum::<f64>().sqrt())
        .fold(0.0_f64, f64::max);
    if scale == 0.0 {
        return Err(0);
    }

    for j in 0..k {
        let norm = (j..n).map(|i| a[i * k + j].powi(2)).sum::<f64>().sqrt();
        if norm <= tol * scale {
            return Err(j);
        }
        let alpha = if a[j * k + j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = (j..n).map(|i| a[i * k + j]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|t| t * t).sum();
        if vnorm2 > 0.0 {
            for c in j..k {
                let dot: f64 = (j..n).map(|i| v[i - j] * a[i * k + c]).sum();
                let f = 2.0 * dot / vnorm2;
                for i in j..n {
                    a[i * k + c] -= f * v[i - j];
                }
            }
            let dot: f64 = (j..n).map(|i| v[i - j] * b[i]).sum();
            let f = 2.0 * dot / vnorm2;
            for i in j..n {
                b[i] -= f * v[i - j];
            }
        }
        if a[j * k + j].abs() <= tol * scale {
            return Err(j);
        }
    }

    let mut r = vec![0.0; k * k];
    for i in 0..k {
        for j in i..k {
            r[i * k + j] = a[i * k + j];
        }
    }
    b.truncate(k);
    Ok(Qr { r, qty: b, k })
}

impl Qr {
    pub fn solve(&self) -> Vec<f64> {
        back_substitute(&self.r, &self.qty, self.k)
    }

    /// `(RᵀR)⁻¹ = R⁻¹R⁻ᵀ`, i.e. `(XᵀX)⁻¹`.
    pub fn xtx_inverse(&self) -> Vec<f64> {
        let k = self.k;
        let mut rinv = vec![0.0; k * k];
        for col in 0..k {
            let mut e = vec![0.0; k];
            e[col] = 1.0;
            let x = back_substitute(&self.r, &e, k);
            for row in 0..k {
                rinv[row * k + col] = x[row];
            }
        }
        let mut out = vec![0.0; k * k];
        for i in 0..k {
            for j in 0..k {
                out[i * k + j] = (0..k).map(|m| rinv[i * k + m] * rinv[j * k + m]).sum();
            }
        }
        out
    }
}

fn back_substitute(r: &[f64], b: &[f64], k: usize) -> Vec<f64> {
    let mut x = vec![0.0; k];
    for i in (0..k).rev() {
        let s: f64 = ((i + 1)..k).map(|j| r[i * k + j] * x[j]).sum();
        x[i] = (b[i] - s) / r[i * k + i];
    }
    x
}

/// Solves `a x = b` for square row-major `a` by Gaussian elimination with
/// partial pivoting. `None` when a pivot vanishes.
pub(crate) fn solve_dense(mut a: Vec<f64>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    debug_assert_eq!(a.len(), n * n);
    for col in 0..n {
        let pivot = (col..n).max_by(|&i, &j| a[i * n + col].abs().total_cmp(&a[j * n + col].abs()))?;
        if a[pivot * n + col].abs() < 1e-300 {
            return None;
        }
        if pivot != col {
            for c in 0..n {
                a.swap(pivot * n + c, col * n + c);
            }
            b.swap(pivot, col);
        }
        let p = a[col * n + col];
        for row in (col + 1)..n {
            let f = a[row * n + col] / p;
            if f != 0.0 {
                for c in col..n {
                    a[row * n + c] -= f * a[col * n + c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = ((i + 1)..n).map(|j| a[i * n + j] * x[j]).sum();
        x[i] = (b[i] - s) / a[i * n + i];
    }
    Some(x)
}
