//! Quasi-Newton minimisation with numerical gradients.

pub(crate) struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub converged: bool,
}

const MAX_ITER: usize = 400;
const GRAD_TOL: f64 = 1e-7;

fn gradient(f: &impl Fn(&[f64]) -> f64, x: &[f64], fx: f64) -> Vec<f64> {
    let mut g = vec![0.0; x.len()];
    let mut xp = x.to_vec();
    for i in 0..x.len() {
        let h = 1e-6 * x[i].abs().max(1.0);
        xp[i] = x[i] + h;
        let fp = f(&xp);
        xp[i] = x[i] - h;
        let fm = f(&xp);
        xp[i] = x[i];
        g[i] = if fp.is_finite() && fm.is_finite() {
            (fp - fm) / (2.0 * h)
        } else if fp.is_finite() {
            (fp - fx) / h
        } else if fm.is_finite() {
            (fx - fm) / h
        } else {
            0.0
        };
    }
    g
}

/// BFGS with a backtracking Armijo line search. Deterministic for a given
/// objective and start.
pub(crate) fn bfgs(f: impl Fn(&[f64]) -> f64, x0: &[f64]) -> Option<Minimum> {
    let n = x0.len();
    let mut x = x0.to_vec();
    let mut fx = f(&x);
    if !fx.is_finite() {
        return None;
    }
    if n == 0 {
        return Some(Minimum { x, value: fx, converged: true });
    }
    let mut g = gradient(&f, &x, fx);
    let mut h = identity(n);
    let mut converged = false;

    for _ in 0..MAX_ITER {
        if norm(&g) < GRAD_TOL * (1.0 + fx.abs()) {
            converged = true;
            break;
        }
        let mut dir: Vec<f64> = (0..n).map(|i| -(0..n).map(|j| h[i * n + j] * g[j]).sum::<f64>()).collect();
        let mut slope = dot(&g, &dir);
        if !(slope < 0.0) {
            h = identity(n);
            dir = g.iter().map(|v| -v).collect();
            slope = -dot(&g, &g);
        }
        // keep steps bounded in the unconstrained space
        let len = norm(&dir);
        if len > 5.0 {
            let s = 5.0 / len;
            dir.iter_mut().for_each(|d| *d *= s);
            slope *= s;
        }

        let mut step = 1.0;
        let mut accepted = None;
        for _ in 0..40 {
            let trial: Vec<f64> = x.iter().zip(&dir).map(|(a, d)| a + step * d).collect();
            let ft = f(&trial);
            if ft.is_finite() && ft <= fx + 1e-4 * step * slope {
                accepted = Some((trial, ft));
                break;
            }
            step *= 0.5;
        }
        let Some((x_new, f_new)) = accepted else {
            converged = norm(&g) < 1e-4 * (1.0 + fx.abs());
            break;
        };
        let g_new = gradient(&f, &x_new, f_new);
        let s: Vec<f64> = x_new.iter().zip(&x).map(|(a, b)| a - b).collect();
        let y: Vec<f64> = g_new.iter().zip(&g).map(|(a, b)| a - b).collect();
        let sy = dot(&s, &y);
        let small_change = (fx - f_new).abs() <= 1e-12 * (1.0 + fx.abs());
        x = x_new;
        fx = f_new;
        g = g_new;
        if sy > 1e-12 * norm(&s) * norm(&y) {
            // H ← (I - ρ s yᵀ) H (I - ρ y sᵀ) + ρ s sᵀ
            let rho = 1.0 / sy;
            let hy: Vec<f64> = (0..n).map(|i| (0..n).map(|j| h[i * n + j] * y[j]).sum()).collect();
            let yhy = dot(&y, &hy);
            for i in 0..n {
                for j in 0..n {
                    h[i * n + j] += -rho * (s[i] * hy[j] + hy[i] * s[j]) + (rho * rho * yhy + rho) * s[i] * s[j];
                }
            }
        }
        if small_change && norm(&s) < 1e-9 * (1.0 + norm(&x)) {
            converged = true;
            break;
        }
    }
    Some(Minimum { x, value: fx, converged })
}

fn identity(n: usize) -> Vec<f64> {
    let mut m = vec![0.0; n * n];
    for i in 0..n {
        m[i * n + i] = 1.0;
    }
    m
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
