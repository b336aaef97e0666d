//! Quadratic minimization over a scaled probability simplex.
//!
//! Minimizes `(1/2) x' Q x + b' x` over `x >= 0`, `sum x = total` by
//! accelerated projected gradient with function-value restarts. The
//! discretized logarithmic energies are convex on the mass-constrained
//! slice, so the first-order conditions certify the minimum: the effective
//! potential `Qx + b` must be constant on the support and no smaller off it.

use alloc::vec;
use alloc::vec::Vec;

use crate::err::{Error, Result};

#[cfg(not(feature = "std"))]
#[allow(unused_imports)]
use num_traits::Float;

#[derive(Clone, Copy, Debug)]
pub struct QpReport {
    pub iterations: usize,
    /// Max of the effective-potential variation on the active set and the
    /// one-sided violation off it, in potential units.
    pub kkt_residual: f64,
    pub objective: f64,
}

pub struct QpSettings {
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for QpSettings {
    fn default() -> Self {
        QpSettings {
            tol: 1e-8,
            max_iterations: 60_000,
        }
    }
}

fn matvec(q: &[f64], x: &[f64], out: &mut [f64]) {
    let n = x.len();
    for i in 0..n {
        let row = &q[i * n..(i + 1) * n];
        let mut acc = 0.0;
        for j in 0..n {
            acc += row[j] * x[j];
        }
        out[i] = acc;
    }
}

/// Euclidean projection onto `{x >= 0, sum x = total}`.
pub fn project_simplex(y: &[f64], total: f64, out: &mut Vec<f64>) {
    let n = y.len();
    out.clear();
    out.extend_from_slice(y);
    let mut sorted = y.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut acc = 0.0;
    let mut lambda = 0.0;
    for (k, &s) in sorted.iter().enumerate() {
        acc += s;
        let cand = (acc - total) / (k + 1) as f64;
        if k + 1 == n || sorted[k + 1] <= cand {
            lambda = cand;
            break;
        }
    }
    for v in out.iter_mut() {
        *v = (*v - lambda).max(0.0);
    }
}

fn spectral_bound(q: &[f64], n: usize) -> f64 {
    // Power iteration on Q (symmetric); a mild overestimate is fine.
    let mut v = vec![1.0 / n as f64; n];
    let mut w = vec![0.0; n];
    let mut lam = 1.0;
    for _ in 0..40 {
        matvec(q, &v, &mut w);
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm == 0.0 {
            break;
        }
        lam = norm;
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / norm;
        }
    }
    lam * 1.1 + 1e-12
}

fn kkt_residual(g: &[f64], x: &[f64], total: f64) -> f64 {
    let n = x.len();
    let cut = 1e-12 * total / n as f64;
    let mut mass_on = 0.0;
    let mut avg = 0.0;
    for i in 0..n {
        if x[i] > cut {
            mass_on += x[i];
            avg += x[i] * g[i];
        }
    }
    if mass_on == 0.0 {
        return f64::INFINITY;
    }
    let ell = avg / mass_on;
    let mut r = 0.0f64;
    for i in 0..n {
        if x[i] > cut {
            r = r.max((g[i] - ell).abs());
        } else {
            r = r.max(ell - g[i]);
        }
    }
    r
}

/// Minimize `(1/2) x' Q x + b' x` over the scaled simplex.
pub fn minimize_quadratic_simplex(
    q: &[f64],
    b: &[f64],
    total: f64,
    x0: Option<&[f64]>,
    settings: &QpSettings,
) -> Result<(Vec<f64>, QpReport)> {
    let n = b.len();
    if q.len() != n * n {
        return Err(Error::InvalidParameter("Q dimension mismatch".into()));
    }
    if !(total > 0.0) {
        return Err(Error::InvalidParameter(
            "total mass must be positive".into(),
        ));
    }
    let mut x = match x0 {
        Some(x0) if x0.len() == n => {
            let mut p = Vec::new();
            project_simplex(x0, total, &mut p);
            p
        }
        _ => vec![total / n as f64; n],
    };
    let lip = spectral_bound(q, n);
    let step = 1.0 / lip;
    let mut y = x.clone();
    let mut x_prev = x.clone();
    let mut g = vec![0.0; n];
    let mut trial = Vec::with_capacity(n);
    let mut t_acc = 1.0f64;
    let objective = |x: &[f64], g: &mut Vec<f64>| -> f64 {
        matvec(q, x, g);
        let mut val = 0.0;
        for i in 0..n {
            val += x[i] * (0.5 * g[i] + b[i]);
        }
        val
    };
    let mut obj_prev = f64::INFINITY;
    let mut report = QpReport {
        iterations: 0,
        kkt_residual: f64::INFINITY,
        objective: f64::INFINITY,
    };
    for it in 0..settings.max_iterations {
        matvec(q, &y, &mut g);
        for i in 0..n {
            g[i] = y[i] - step * (g[i] + b[i]);
        }
        project_simplex(&g, total, &mut trial);
        x_prev.copy_from_slice(&x);
        x.copy_from_slice(&trial);
        let t_next = 0.5 * (1.0 + (1.0 + 4.0 * t_acc * t_acc).sqrt());
        let beta = (t_acc - 1.0) / t_next;
        for i in 0..n {
            y[i] = x[i] + beta * (x[i] - x_prev[i]);
        }
        t_acc = t_next;
        if it % 32 == 31 {
            let obj = objective(&x, &mut g);
            for i in 0..n {
                g[i] += b[i];
            }
            let r = kkt_residual(&g, &x, total);
            report = QpReport {
                iterations: it + 1,
                kkt_residual: r,
                objective: obj,
            };
            if r < settings.tol {
                return Ok((x, report));
            }
            if obj > obj_prev {
                // Restart the momentum.
                t_acc = 1.0;
                y.copy_from_slice(&x);
            }
            obj_prev = obj;
        }
    }
    Err(Error::NonConvergence {
        context: "simplex QP".into(),
        residual: report.kkt_residual,
    })
}
