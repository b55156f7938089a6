// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Small dense linear algebra: 2×2 transfer matrices and LU solves.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use num_traits::Zero;

use crate::{Error, Result};

/// 2×2 complex matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2([
        [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
    ]);
    pub const ZERO: Mat2 = Mat2([[Complex64::new(0.0, 0.0); 2]; 2]);

    pub fn det(&self) -> Complex64 {
        let m = &self.0;
        m[0][0] * m[1][1] - m[0][1] * m[1][0]
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn apply(&self, v: [Complex64; 2]) -> [Complex64; 2] {
        let m = &self.0;
        [
            m[0][0] * v[0] + m[0][1] * v[1],
            m[1][0] * v[0] + m[1][1] * v[1],
        ]
    }

    /// Sum of entry moduli, used to scale residuals.
    pub fn norm1(&self) -> f64 {
        self.0.iter().flatten().map(|z| z.norm()).sum()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        let (a, b) = (&self.0, &rhs.0);
        let mut out = [[Complex64::zero(); 2]; 2];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(out)
    }
}

impl Add for Mat2 {
    type Output = Mat2;
    fn add(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] += rhs.0[i][j];
            }
        }
        Mat2(out)
    }
}

impl Sub for Mat2 {
    type Output = Mat2;
    fn sub(self, rhs: Mat2) -> Mat2 {
        let mut out = self.0;
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] -= rhs.0[i][j];
            }
        }
        Mat2(out)
    }
}

/// A matrix together with its derivative with respect to one parameter.
#[derive(Debug, Clone, Copy)]
pub struct Mat2Diff {
    pub value: Mat2,
    pub deriv: Mat2,
}

impl Mat2Diff {
    pub const IDENTITY: Mat2Diff = Mat2Diff {
        value: Mat2::IDENTITY,
        deriv: Mat2::ZERO,
    };
}

impl Mul for Mat2Diff {
    type Output = Mat2Diff;
    fn mul(self, rhs: Mat2Diff) -> Mat2Diff {
        Mat2Diff {
            value: self.value * rhs.value,
            deriv: self.deriv * rhs.value + self.value * rhs.deriv,
        }
    }
}

/// LU factorization with partial pivoting of a dense square complex matrix.
#[derive(Debug, Clone)]
pub struct ComplexLu {
    n: usize,
    lu: Vec<Complex64>,
    perm: Vec<usize>,
    /// Ratio of the smallest to the largest pivot modulus.
    pub pivot_ratio: f64,
}

impl ComplexLu {
    /// Factorizes the row-major `n × n` matrix `a`.
    pub fn factor(n: usize, mut a: Vec<Complex64>) -> Result<Self> {
        assert_eq!(a.len(), n * n);
        let mut perm: Vec<usize> = (0..n).collect();
        let (mut pmin, mut pmax) = (f64::INFINITY, 0.0f64);
        for k in 0..n {
            let mut p = k;
            let mut best = a[k * n + k].norm();
            for r in k + 1..n {
                let v = a[r * n + k].norm();
                if v > best {
                    best = v;
                    p = r;
                }
            }
            if best == 0.0 || !best.is_finite() {
                return Err(Error::Numerical(format!(
                    "singular matrix at column {k} of {n}"
                )));
            }
            pmin = pmin.min(best);
            pmax = pmax.max(best);
            if p != k {
                for c in 0..n {
                    a.swap(k * n + c, p * n + c);
                }
                perm.swap(k, p);
            }
            let inv = a[k * n + k].inv();
            let (head, tail) = a.split_at_mut((k + 1) * n);
            let pivot_row = &head[k * n..(k + 1) * n];
            for row in tail.chunks_exact_mut(n) {
                let factor = row[k] * inv;
                if factor.is_zero() {
                    continue;
                }
                row[k] = factor;
                for c in k + 1..n {
                    row[c] -= factor * pivot_row[c];
                }
            }
        }
        Ok(ComplexLu {
            n,
            lu: a,
            perm,
            pivot_ratio: if pmax > 0.0 { pmin / pmax } else { 0.0 },
        })
    }

    pub fn solve(&self, b: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut x: Vec<Complex64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 0..n {
            let row = &self.lu[i * n..i * n + i];
            let mut s = x[i];
            for (l, xv) in row.iter().zip(&x[..i]) {
                s -= l * xv;
            }
            x[i] = s;
        }
        for i in (0..n).rev() {
            let row = &self.lu[i * n..(i + 1) * n];
            let mut s = x[i];
            for c in i + 1..n {
                s -= row[c] * x[c];
            }
            x[i] = s / row[i];
        }
        x
    }
}

/// Solves the dense complex system `a x = b` (row-major `a`).
pub fn solve_complex(n: usize, a: Vec<Complex64>, b: &[Complex64]) -> Result<Vec<Complex64>> {
    Ok(ComplexLu::factor(n, a)?.solve(b))
}

/// Solves a small dense real system by Gaussian elimination with partial pivoting.
pub fn solve_real(n: usize, mut a: Vec<f64>, mut b: Vec<f64>) -> Result<Vec<f64>> {
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| a[i * n + k].abs().total_cmp(&a[j * n + k].abs()))
            .unwrap_or(k);
        if a[p * n + k] == 0.0 || !a[p * n + k].is_finite() {
            return Err(Error::Numerical(format!(
                "singular normal matrix at column {k}"
            )));
        }
        if p != k {
            for c in 0..n {
                a.swap(k * n + c, p * n + c);
            }
            b.swap(k, p);
        }
        for r in k + 1..n {
            let f = a[r * n + k] / a[k * n + k];
            for c in k..n {
                a[r * n + c] -= f * a[k * n + c];
            }
            b[r] -= f * b[k];
        }
    }
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let s: f64 = (i + 1..n).map(|c| a[i * n + c] * x[c]).sum();
        x[i] = (b[i] - s) / a[i * n + i];
    }
    Ok(x)
}

/// Trapezoid rule on a uniform grid.
pub fn trapezoid<T>(samples: &[T], dx: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T> + Zero,
{
    if samples.len() < 2 {
        return T::zero();
    }
    let interior = samples[1..samples.len() - 1]
        .iter()
        .fold(T::zero(), |acc, &s| acc + s);
    (interior + (samples[0] + samples[samples.len() - 1]) * 0.5) * dx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lu_solves_known_system() {
        let c = |re, im| Complex64::new(re, im);
        let a = vec![c(2.0, 1.0), c(0.0, -1.0), c(1.0, 0.0), c(3.0, 0.5)];
        let x = vec![c(1.0, -2.0), c(0.5, 0.25)];
        let b = [a[0] * x[0] + a[1] * x[1], a[2] * x[0] + a[3] * x[1]];
        let got = solve_complex(2, a, &b).unwrap();
        for (g, e) in got.iter().zip(&x) {
            assert!((g - e).norm() < 1e-14);
        }
    }

    #[test]
    fn singular_matrix_is_rejected() {
        let z = Complex64::zero();
        let o = Complex64::new(1.0, 0.0);
        assert!(matches!(
            ComplexLu::factor(2, vec![o, o, o, o]),
            Err(Error::Numerical(_))
        ));
        assert!(ComplexLu::factor(2, vec![z, z, z, o]).is_err());
    }

    #[test]
    fn real_solve_and_trapezoid() {
        let x = solve_real(2, vec![0.0, 2.0, 1.0, 1.0], vec![4.0, 3.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-15 && (x[1] - 2.0).abs() < 1e-15);
        let ys: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        assert!((trapezoid(&ys, 0.1) - 0.5).abs() < 1e-14);
    }

    #[test]
    fn product_rule_derivative() {
        let c = |re| Complex64::new(re, 0.0);
        let a = Mat2Diff {
            value: Mat2([[c(1.0), c(2.0)], [c(0.0), c(1.0)]]),
            deriv: Mat2([[c(0.0), c(1.0)], [c(0.0), c(0.0)]]),
        };
        let p = a * a;
        // d/dt [[1,2+t],[0,1]]^2 = [[0,2],[0,0]]
        assert_eq!(p.deriv.0[0][1], c(2.0));
        assert_eq!(p.value.0[0][1], c(4.0));
    }
}
