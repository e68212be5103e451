//! Restarted GMRES with left Jacobi preconditioning.
//!
//! Inner products are accumulated sequentially so results do not depend on
//! the number of worker threads used by the operator.

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct GmresSettings {
    pub restart: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GmresOutcome {
    pub iterations: usize,
    /// Preconditioned relative residual at exit.
    pub residual: f64,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Solves `A x = b` in place. `apply(v, out)` writes `A v` into `out`;
/// `inv_diag` holds the reciprocal diagonal of `A`.
pub fn gmres(
    apply: impl Fn(&[f64], &mut [f64]),
    b: &[f64],
    inv_diag: &[f64],
    x: &mut [f64],
    settings: GmresSettings,
) -> Result<GmresOutcome> {
    let n = b.len();
    let m = settings.restart.max(1);
    let pb: Vec<f64> = b.iter().zip(inv_diag).map(|(bi, di)| bi * di).collect();
    let bnorm = norm(&pb);
    if bnorm == 0.0 {
        x.fill(0.0);
        return Ok(GmresOutcome { iterations: 0, residual: 0.0 });
    }

    let mut total = 0;
    let mut ax = vec![0.0; n];
    loop {
        apply(x, &mut ax);
        let r: Vec<f64> = (0..n).map(|i| (b[i] - ax[i]) * inv_diag[i]).collect();
        let beta = norm(&r);
        if beta / bnorm <= settings.tolerance {
            return Ok(GmresOutcome { iterations: total, residual: beta / bnorm });
        }
        if total >= settings.max_iterations {
            return Err(Error::NonConvergedSolve { iterations: total, residual: beta / bnorm });
        }

        let mut basis = vec![r.iter().map(|ri| ri / beta).collect::<Vec<f64>>()];
        let mut h = vec![vec![0.0; m]; m + 1];
        let (mut cs, mut sn) = (vec![0.0; m], vec![0.0; m]);
        let mut g = vec![0.0; m + 1];
        g[0] = beta;
        let mut used = 0;

        for k in 0..m {
            let mut w = vec![0.0; n];
            apply(&basis[k], &mut w);
            for (wi, di) in w.iter_mut().zip(inv_diag) {
                *wi *= di;
            }
            total += 1;
            for (i, vi) in basis.iter().enumerate() {
                h[i][k] = dot(&w, vi);
                for (wj, vj) in w.iter_mut().zip(vi) {
                    *wj -= h[i][k] * vj;
                }
            }
            h[k + 1][k] = norm(&w);

            for i in 0..k {
                let t = cs[i] * h[i][k] + sn[i] * h[i + 1][k];
                h[i + 1][k] = -sn[i] * h[i][k] + cs[i] * h[i + 1][k];
                h[i][k] = t;
            }
            let denom = h[k][k].hypot(h[k + 1][k]);
            if denom == 0.0 {
                return Err(Error::SingularSystem("GMRES breakdown".into()));
            }
            cs[k] = h[k][k] / denom;
            sn[k] = h[k + 1][k] / denom;
            let hk1 = h[k + 1][k];
            h[k][k] = cs[k] * h[k][k] + sn[k] * hk1;
            h[k + 1][k] = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] *= cs[k];
            used = k + 1;

            let next = norm(&w);
            if g[k + 1].abs() / bnorm <= settings.tolerance || total >= settings.max_iterations || next == 0.0
            {
                break;
            }
            basis.push(w.iter().map(|wi| wi / next).collect());
        }

        let mut y = vec![0.0; used];
        for i in (0..used).rev() {
            let s: f64 = (i + 1..used).map(|j| h[i][j] * y[j]).sum();
            y[i] = (g[i] - s) / h[i][i];
        }
        for (yi, vi) in y.iter().zip(&basis) {
            for (xj, vj) in x.iter_mut().zip(vi) {
                *xj += yi * vj;
            }
        }
    }
}
