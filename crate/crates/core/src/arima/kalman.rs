//! Exact Gaussian likelihood of a zero-mean ARMA process through the
//! innovations form of the Kalman filter, with the state covariance
//! initialised at its stationary value.

use crate::stats::linalg::solve_dense;

pub(crate) struct StateSpace {
    r: usize,
    /// First column of the transition matrix (AR coefficients, zero padded).
    phi: Vec<f64>,
    /// Disturbance loading `(1, θ₁, …, θ_{r-1})`.
    rvec: Vec<f64>,
}

pub(crate) struct Filtered {
    /// Concentrated innovation variance `(1/n) Σ v²/F`.
    pub sigma2: f64,
    /// `Σ ln F_t`.
    pub sum_log_f: f64,
    /// Raw one-step innovations `v_t`.
    pub innovations: Vec<f64>,
    /// Predicted state `a_{n+1|n}` after the last observation.
    pub next_state: Vec<f64>,
}

impl StateSpace {
    pub fn new(ar: &[f64], ma: &[f64]) -> Self {
        let r = ar.len().max(ma.len() + 1);
        let mut phi = vec![0.0; r];
        phi[..ar.len()].copy_from_slice(ar);
        let mut rvec = vec![0.0; r];
        rvec[0] = 1.0;
        rvec[1..=ma.len()].copy_from_slice(ma);
        Self { r, phi, rvec }
    }

    /// `T x`: `(Tx)_i = φ_i x_0 + x_{i+1}`.
    fn transition(&self, x: &[f64]) -> Vec<f64> {
        (0..self.r)
            .map(|i| self.phi[i] * x[0] + if i + 1 < self.r { x[i + 1] } else { 0.0 })
            .collect()
    }

    /// `T P Tᵀ` for symmetric row-major `P`.
    fn sandwich(&self, p: &[f64]) -> Vec<f64> {
        let r = self.r;
        // rows of T P
        let mut tp = vec![0.0; r * r];
        for i in 0..r {
            for j in 0..r {
                let next = if i + 1 < r { p[(i + 1) * r + j] } else { 0.0 };
                tp[i * r + j] = self.phi[i] * p[j] + next;
            }
        }
        let mut out = vec![0.0; r * r];
        for i in 0..r {
            for j in 0..r {
                let next = if j + 1 < r { tp[i * r + j + 1] } else { 0.0 };
                out[i * r + j] = tp[i * r] * self.phi[j] + next;
            }
        }
        out
    }

    /// Solves `P = T P Tᵀ + R Rᵀ`.
    fn stationary_covariance(&self) -> Option<Vec<f64>> {
        let r = self.r;
        let m = r * r;
        // (I - T⊗T) vec(P) = vec(RRᵀ) with T(i,k) = φ_i [k=0] + [k=i+1]
        let t = |i: usize, k: usize| -> f64 {
            (if k == 0 { self.phi[i] } else { 0.0 }) + if k == i + 1 { 1.0 } else { 0.0 }
        };
        let mut a = vec![0.0; m * m];
        let mut b = vec![0.0; m];
        for i in 0..r {
            for j in 0..r {
                let row = i * r + j;
                a[row * m + row] += 1.0;
                for k in 0..r {
                    let tik = t(i, k);
                    if tik == 0.0 {
                        continue;
                    }
                    for l in 0..r {
                        let tjl = t(j, l);
                        if tjl != 0.0 {
                            a[row * m + k * r + l] -= tik * tjl;
                        }
                    }
                }
                b[row] = self.rvec[i] * self.rvec[j];
            }
        }
        solve_dense(a, b)
    }

    /// Runs the filter over `z` (already demeaned). `None` when the
    /// stationary covariance does not exist or a prediction variance is
    /// not positive.
    pub fn filter(&self, z: &[f64]) -> Option<Filtered> {
        let r = self.r;
        let rr: Vec<f64> = (0..r * r).map(|idx| self.rvec[idx / r] * self.rvec[idx % r]).collect();
        let mut p = self.stationary_covariance()?;
        let mut a = vec![0.0; r];
        let mut ssq = 0.0;
        let mut sum_log_f = 0.0;
        let mut innovations = Vec::with_capacity(z.len());
        let mut steady = false;

        for &obs in z {
            let v = obs - a[0];
            let f = p[0];
            if !(f > 0.0) || !f.is_finite() {
                return None;
            }
            innovations.push(v);
            ssq += v * v / f;
            sum_log_f += f.ln();

            // update
            let k: Vec<f64> = (0..r).map(|i| p[i * r] / f).collect();
            let a_upd: Vec<f64> = (0..r).map(|i| a[i] + k[i] * v).collect();
            a = self.transition(&a_upd);

            if !steady {
                let mut p_upd = p.clone();
                for i in 0..r {
                    for j in 0..r {
                        p_upd[i * r + j] -= k[i] * p[j];
                    }
                }
                let mut next = self.sandwich(&p_upd);
                for (x, add) in next.iter_mut().zip(&rr) {
                    *x += add;
                }
                steady = next
                    .iter()
                    .zip(&p)
                    .all(|(x, y)| (x - y).abs() <= 1e-12 * (1.0 + y.abs()));
                p = next;
            }
        }
        let n = z.len() as f64;
        Some(Filtered {
            sigma2: ssq / n,
            sum_log_f,
            innovations,
            next_state: a,
        })
    }

    /// Point forecasts of the demeaned process for steps `1..=h` from the
    /// filtered state.
    pub fn forecast(&self, state: &[f64], h: usize) -> Vec<f64> {
        let mut a = state.to_vec();
        let mut out = Vec::with_capacity(h);
        for _ in 0..h {
            out.push(a[0]);
            a = self.transition(&a);
        }
        out
    }
}

/// Concentrated exact log-likelihood: `-n/2 (ln 2π + ln σ̂² + 1) - ½ Σ ln F`.
pub(crate) fn concentrated_loglik(n: usize, sigma2: f64, sum_log_f: f64) -> f64 {
    let n = n as f64;
    -0.5 * n * ((2.0 * std::f64::consts::PI).ln() + sigma2.ln() + 1.0) - 0.5 * sum_log_f
}
