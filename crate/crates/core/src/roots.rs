// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Scalar root finders.

use alloc::format;

use num_complex::Complex64;

use crate::{Error, Result};

/// Brent's bracketed root finder on `[a, b]`; `f(a)` and `f(b)` must differ in sign.
pub fn brent<F: FnMut(f64) -> f64>(mut f: F, mut a: f64, mut b: f64, xtol: f64) -> Result<f64> {
    let mut fa = f(a);
    let mut fb = f(b);
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }
    if fa.signum() == fb.signum() || !fa.is_finite() || !fb.is_finite() {
        return Err(Error::Numerical(format!(
            "root not bracketed in [{a:e}, {b:e}]"
        )));
    }
    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for _ in 0..200 {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * xtol;
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
    }
    Err(Error::Numerical(format!(
        "Brent iteration did not converge near {b:e}"
    )))
}

/// Outcome of a complex Newton iteration.
#[derive(Debug, Clone, Copy)]
pub struct NewtonRoot {
    pub root: Complex64,
    pub iterations: usize,
}

/// Damped complex Newton iteration. `f` returns the function value and derivative.
///
/// Steps are capped at `max_step` in modulus. Converges when the step falls
/// below `rel_tol · |z|`.
pub fn newton_complex<F>(
    mut f: F,
    start: Complex64,
    max_step: f64,
    rel_tol: f64,
    max_iter: usize,
) -> Result<NewtonRoot>
where
    F: FnMut(Complex64) -> (Complex64, Complex64),
{
    let mut z = start;
    for it in 0..max_iter {
        let (v, dv) = f(z);
        if !v.is_finite() || !dv.is_finite() || dv.norm() == 0.0 {
            return Err(Error::Numerical(format!(
                "Newton broke down at z = {z} (f = {v}, f' = {dv})"
            )));
        }
        let mut step = v / dv;
        let len = step.norm();
        if len > max_step {
            step = step * (max_step / len);
        }
        z -= step;
        if step.norm() <= rel_tol * z.norm() {
            return Ok(NewtonRoot {
                root: z,
                iterations: it + 1,
            });
        }
    }
    Err(Error::Numerical(format!(
        "Newton did not converge in {max_iter} iterations, last z = {z}"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brent_finds_cosine_zero() {
        let r = brent(|x| x.cos(), 1.0, 2.0, 1e-15).unwrap();
        assert!((r - core::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn brent_rejects_unbracketed() {
        assert!(brent(|x| x * x + 1.0, -1.0, 1.0, 1e-12).is_err());
    }

    #[test]
    fn newton_complex_sqrt_of_minus_one() {
        let r = newton_complex(
            |z| (z * z + 1.0, z * 2.0),
            Complex64::new(0.3, 0.8),
            1.0,
            1e-15,
            50,
        )
        .unwrap();
        assert!((r.root - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }
}
