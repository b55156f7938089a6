// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Compressed-row complex matrices, ILU(0) and restarted GMRES.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;
use num_traits::Zero;

use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    pub n: usize,
    pub row_ptr: Vec<usize>,
    pub cols: Vec<usize>,
    pub vals: Vec<Complex64>,
}

impl CsrMatrix {
    /// Builds the matrix row by row; duplicate columns within a row are summed.
    pub fn from_rows<I>(n: usize, rows: I) -> Self
    where
        I: IntoIterator<Item = Vec<(usize, Complex64)>>,
    {
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            let mut last: Option<usize> = None;
            for (c, v) in row {
                if last == Some(c) {
                    *vals.last_mut().unwrap() += v;
                } else {
                    cols.push(c);
                    vals.push(v);
                    last = Some(c);
                }
            }
            row_ptr.push(cols.len());
        }
        assert_eq!(row_ptr.len(), n + 1);
        CsrMatrix {
            n,
            row_ptr,
            cols,
            vals,
        }
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn matvec(&self, x: &[Complex64], y: &mut [Complex64]) {
        for (r, out) in y.iter_mut().enumerate() {
            let mut s = Complex64::zero();
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                s += self.vals[k] * x[self.cols[k]];
            }
            *out = s;
        }
    }

    pub fn to_dense(&self) -> Vec<Complex64> {
        let mut d = vec![Complex64::zero(); self.n * self.n];
        for r in 0..self.n {
            for k in self.row_ptr[r]..self.row_ptr[r + 1] {
                d[r * self.n + self.cols[k]] += self.vals[k];
            }
        }
        d
    }
}

/// Incomplete LU factorization with the sparsity pattern of the matrix.
pub struct Ilu0 {
    lu: CsrMatrix,
    diag: Vec<usize>,
}

/// Approximate inverse used by [`gmres`].
pub trait Preconditioner {
    /// x ≈ A⁻¹ b.
    fn apply(&self, b: &[Complex64], x: &mut [Complex64]);
}

impl Preconditioner for Ilu0 {
    fn apply(&self, b: &[Complex64], x: &mut [Complex64]) {
        Ilu0::apply(self, b, x)
    }
}

impl Ilu0 {
    pub fn new(a: &CsrMatrix) -> Result<Self> {
        let mut lu = a.clone();
        let n = lu.n;
        let mut diag = vec![usize::MAX; n];
        for r in 0..n {
            for k in lu.row_ptr[r]..lu.row_ptr[r + 1] {
                if lu.cols[k] == r {
                    diag[r] = k;
                }
            }
            if diag[r] == usize::MAX {
                return Err(Error::Numerical(format!(
                    "ILU(0): row {r} has no diagonal entry"
                )));
            }
        }
        let mut pos = vec![usize::MAX; n];
        for i in 0..n {
            let (start, end) = (lu.row_ptr[i], lu.row_ptr[i + 1]);
            for k in start..end {
                pos[lu.cols[k]] = k;
            }
            for kk in start..end {
                let kcol = lu.cols[kk];
                if kcol >= i {
                    break;
                }
                let pivot = lu.vals[diag[kcol]];
                if pivot.norm() == 0.0 {
                    return Err(Error::Numerical(format!(
                        "ILU(0): zero pivot in row {kcol}"
                    )));
                }
                let factor = lu.vals[kk] / pivot;
                lu.vals[kk] = factor;
                for m in diag[kcol] + 1..lu.row_ptr[kcol + 1] {
                    let p = pos[lu.cols[m]];
                    if p != usize::MAX {
                        let v = lu.vals[m];
                        lu.vals[p] -= factor * v;
                    }
                }
            }
            for k in start..end {
                pos[lu.cols[k]] = usize::MAX;
            }
            if lu.vals[diag[i]].norm() == 0.0 {
                return Err(Error::Numerical(format!("ILU(0): zero pivot in row {i}")));
            }
        }
        Ok(Ilu0 { lu, diag })
    }

    pub fn apply(&self, b: &[Complex64], x: &mut [Complex64]) {
        let lu = &self.lu;
        for i in 0..lu.n {
            let mut s = b[i];
            for k in lu.row_ptr[i]..self.diag[i] {
                s -= lu.vals[k] * x[lu.cols[k]];
            }
            x[i] = s;
        }
        for i in (0..lu.n).rev() {
            let mut s = x[i];
            for k in self.diag[i] + 1..lu.row_ptr[i + 1] {
                s -= lu.vals[k] * x[lu.cols[k]];
            }
            x[i] = s / lu.vals[self.diag[i]];
        }
    }
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// Right-preconditioned restarted GMRES. Returns the solution and the final
/// relative residual.
pub fn gmres<P: Preconditioner + ?Sized>(
    a: &CsrMatrix,
    precond: &P,
    b: &[Complex64],
    restart: usize,
    tol: f64,
    max_restarts: usize,
) -> Result<(Vec<Complex64>, f64)> {
    let n = a.n;
    let bnorm = norm(b);
    let mut x = vec![Complex64::zero(); n];
    if bnorm == 0.0 {
        return Ok((x, 0.0));
    }
    let mut r = vec![Complex64::zero(); n];
    let mut tmp = vec![Complex64::zero(); n];
    let mut rel = 1.0;
    for _ in 0..max_restarts {
        a.matvec(&x, &mut r);
        for (ri, bi) in r.iter_mut().zip(b) {
            *ri = bi - *ri;
        }
        let beta = norm(&r);
        rel = beta / bnorm;
        if rel <= tol {
            return Ok((x, rel));
        }
        let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(restart + 1);
        basis.push(r.iter().map(|z| z / beta).collect());
        let mut h = vec![vec![Complex64::zero(); restart]; restart + 1];
        let mut cs = vec![Complex64::zero(); restart];
        let mut sn = vec![Complex64::zero(); restart];
        let mut g = vec![Complex64::zero(); restart + 1];
        g[0] = Complex64::new(beta, 0.0);
        let mut used = 0;
        for j in 0..restart {
            precond.apply(&basis[j], &mut tmp);
            let mut w = vec![Complex64::zero(); n];
            a.matvec(&tmp, &mut w);
            for i in 0..=j {
                let hij = dot(&basis[i], &w);
                h[i][j] = hij;
                for (wk, vk) in w.iter_mut().zip(&basis[i]) {
                    *wk -= hij * vk;
                }
            }
            let hn = norm(&w);
            h[j + 1][j] = Complex64::new(hn, 0.0);
            for i in 0..j {
                let (x0, y0) = (h[i][j], h[i + 1][j]);
                h[i][j] = cs[i].conj() * x0 + sn[i].conj() * y0;
                h[i + 1][j] = -sn[i] * x0 + cs[i] * y0;
            }
            let (p, q) = (h[j][j], h[j + 1][j]);
            let rr = (p.norm_sqr() + q.norm_sqr()).sqrt();
            if rr == 0.0 {
                return Err(Error::Numerical("GMRES breakdown".into()));
            }
            cs[j] = p / rr;
            sn[j] = q / rr;
            h[j][j] = Complex64::new(rr, 0.0);
            h[j + 1][j] = Complex64::zero();
            let gj = g[j];
            g[j] = cs[j].conj() * gj;
            g[j + 1] = -sn[j] * gj;
            used = j + 1;
            rel = g[j + 1].norm() / bnorm;
            if rel <= tol || hn == 0.0 {
                break;
            }
            basis.push(w.iter().map(|z| z / hn).collect());
        }
        let mut y = vec![Complex64::zero(); used];
        for i in (0..used).rev() {
            let mut s = g[i];
            for k in i + 1..used {
                s -= h[i][k] * y[k];
            }
            y[i] = s / h[i][i];
        }
        let mut update = vec![Complex64::zero(); n];
        for (yi, vi) in y.iter().zip(&basis) {
            for (u, v) in update.iter_mut().zip(vi) {
                *u += yi * v;
            }
        }
        precond.apply(&update, &mut tmp);
        for (xi, t) in x.iter_mut().zip(&tmp) {
            *xi += t;
        }
    }
    a.matvec(&x, &mut r);
    let res = norm(&r.iter().zip(b).map(|(ri, bi)| bi - ri).collect::<Vec<_>>()) / bnorm;
    if res <= tol {
        Ok((x, res))
    } else {
        Err(Error::Numerical(format!(
            "GMRES stalled at relative residual {res:e} (last inner estimate {rel:e})"
        )))
    }
}
