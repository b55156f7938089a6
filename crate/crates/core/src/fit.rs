// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Damped Gauss–Newton (Levenberg–Marquardt) least squares with a
//! central-difference Jacobian. Deterministic: no random restarts.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::linalg::solve_real;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeastSquaresOptions {
    pub max_iter: usize,
    /// Stop when the relative step and relative cost change fall below this.
    pub tol: f64,
}

impl Default for LeastSquaresOptions {
    fn default() -> Self {
        LeastSquaresOptions {
            max_iter: 200,
            tol: 1e-12,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LeastSquaresFit {
    pub params: Vec<f64>,
    /// Euclidean norm of the final residual vector.
    pub residual_norm: f64,
    pub iterations: usize,
}

fn cost(r: &[f64]) -> f64 {
    r.iter().map(|v| v * v).sum()
}

/// Minimizes ‖r(p)‖². `residuals(p, out)` fills `out` (length `n_resid`).
/// `typical[j]` sets the finite-difference floor for parameter j.
pub fn levenberg_marquardt<F>(
    mut residuals: F,
    start: &[f64],
    typical: &[f64],
    n_resid: usize,
    opts: &LeastSquaresOptions,
) -> Result<LeastSquaresFit>
where
    F: FnMut(&[f64], &mut [f64]),
{
    let np = start.len();
    assert_eq!(typical.len(), np);
    if n_resid < np {
        return Err(Error::Fit(format!(
            "{n_resid} residuals cannot determine {np} parameters"
        )));
    }
    let mut p = start.to_vec();
    let mut r = vec![0.0; n_resid];
    residuals(&p, &mut r);
    let mut c = cost(&r);
    if !c.is_finite() {
        return Err(Error::Fit(
            "residuals are not finite at the initial guess".into(),
        ));
    }
    let mut lambda = 1e-3;
    let mut jac = vec![0.0; n_resid * np];
    let (mut rp, mut rm) = (vec![0.0; n_resid], vec![0.0; n_resid]);
    for iter in 1..=opts.max_iter {
        for j in 0..np {
            let h = 1e-6 * p[j].abs().max(typical[j]);
            let mut q = p.clone();
            q[j] = p[j] + h;
            residuals(&q, &mut rp);
            q[j] = p[j] - h;
            residuals(&q, &mut rm);
            for i in 0..n_resid {
                jac[i * np + j] = (rp[i] - rm[i]) / (2.0 * h);
            }
        }
        let mut jtj = vec![0.0; np * np];
        let mut jtr = vec![0.0; np];
        for i in 0..n_resid {
            let row = &jac[i * np..(i + 1) * np];
            for a in 0..np {
                jtr[a] -= row[a] * r[i];
                for b in 0..np {
                    jtj[a * np + b] += row[a] * row[b];
                }
            }
        }
        let grad = jtr.iter().map(|v| v.abs()).fold(0.0, f64::max);
        if grad == 0.0 {
            return Ok(LeastSquaresFit {
                params: p,
                residual_norm: c.sqrt(),
                iterations: iter,
            });
        }
        let mut accepted = false;
        for _ in 0..40 {
            let mut damped = jtj.clone();
            for a in 0..np {
                damped[a * np + a] += lambda * jtj[a * np + a].max(1e-300);
            }
            let step = match solve_real(np, damped, jtr.clone()) {
                Ok(s) => s,
                Err(_) => {
                    lambda *= 10.0;
                    continue;
                }
            };
            let trial: Vec<f64> = p.iter().zip(&step).map(|(a, b)| a + b).collect();
            residuals(&trial, &mut rp);
            let ct = cost(&rp);
            if ct.is_finite() && ct <= c {
                let rel_step = step
                    .iter()
                    .zip(&p)
                    .zip(typical)
                    .map(|((s, v), t)| s.abs() / v.abs().max(*t))
                    .fold(0.0, f64::max);
                let rel_cost = (c - ct) / c.max(1e-300);
                p = trial;
                core::mem::swap(&mut r, &mut rp);
                c = ct;
                lambda = (lambda / 3.0).max(1e-12);
                accepted = true;
                if rel_step < opts.tol || rel_cost < opts.tol * opts.tol || c == 0.0 {
                    return Ok(LeastSquaresFit {
                        params: p,
                        residual_norm: c.sqrt(),
                        iterations: iter,
                    });
                }
                break;
            }
            lambda *= 4.0;
        }
        if !accepted {
            // No downhill step at any damping: a stationary point to working precision.
            return Ok(LeastSquaresFit {
                params: p,
                residual_norm: c.sqrt(),
                iterations: iter,
            });
        }
    }
    Err(Error::Numerical(format!(
        "least squares did not converge in {} iterations (residual norm {:.3e})",
        opts.max_iter,
        c.sqrt()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn recovers_exponential_parameters() {
        let xs: Vec<f64> = (0..40).map(|i| i as f64 * 0.1).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.5 * (-1.3 * x).exp() + 0.2).collect();
        let fit = levenberg_marquardt(
            |p, out| {
                for (o, (x, y)) in out.iter_mut().zip(xs.iter().zip(&ys)) {
                    *o = p[0] * (-p[1] * x).exp() + p[2] - y;
                }
            },
            &[1.0, 0.5, 0.0],
            &[1.0, 1.0, 1.0],
            xs.len(),
            &LeastSquaresOptions::default(),
        )
        .unwrap();
        assert!((fit.params[0] - 2.5).abs() < 1e-8);
        assert!((fit.params[1] - 1.3).abs() < 1e-8);
        assert!((fit.params[2] - 0.2).abs() < 1e-8);
        assert!(fit.residual_norm < 1e-8);
    }

    #[test]
    fn underdetermined_problem_is_rejected() {
        let r = levenberg_marquardt(
            |_, _| {},
            &[0.0, 0.0],
            &[1.0, 1.0],
            1,
            &LeastSquaresOptions::default(),
        );
        assert!(matches!(r, Err(Error::Fit(_))));
    }
}
