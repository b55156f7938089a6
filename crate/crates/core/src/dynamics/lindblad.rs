// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Steady state of the master equation in the truncated Fock space.
//!
//! Basis ordering: index = atom·F + Σ n_k (n_max+1)^(M−1−k), with atom = 1 for
//! the excited state and F = (n_max+1)^M. ρ is vectorized row-major.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;
use num_traits::Zero;

use super::sparse::{gmres, CsrMatrix, Ilu0, Preconditioner};
use super::{reflection, DensityDiagnostics, SteadyState, SystemModel};
use crate::linalg::ComplexLu;
use crate::{Error, Result};

pub const DEFAULT_DIMENSION_CAP: usize = 1024;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LindbladOptions {
    /// Largest admissible Hilbert dimension 2·(n_max+1)^M.
    pub dimension_cap: usize,
    /// Liouvillian sizes up to this are solved by dense LU, larger ones by
    /// preconditioned GMRES.
    pub dense_limit: usize,
    pub gmres_tol: f64,
}

impl Default for LindbladOptions {
    fn default() -> Self {
        LindbladOptions {
            dimension_cap: DEFAULT_DIMENSION_CAP,
            dense_limit: 1024,
            gmres_tol: 1e-12,
        }
    }
}

pub fn lindblad_steady_state(model: &SystemModel, n_max: usize) -> Result<SteadyState> {
    lindblad_steady_state_with(model, n_max, &LindbladOptions::default())
}

/// Sparse operator with at most one entry per row: `row -> (col, value)`.
type Jump = Vec<Option<(usize, f64)>>;

struct FockSpace {
    levels: usize,
    modes: usize,
    fock: usize,
}

impl FockSpace {
    fn stride(&self, k: usize) -> usize {
        self.levels.pow((self.modes - 1 - k) as u32)
    }

    fn occupation(&self, state: usize, k: usize) -> usize {
        (state % self.fock) / self.stride(k) % self.levels
    }

    fn excited(&self, state: usize) -> bool {
        state >= self.fock
    }
}

fn hilbert_dimension(n_max: usize, modes: usize) -> Option<usize> {
    (n_max + 1).checked_pow(modes as u32)?.checked_mul(2)
}

/// Largest excitation sector solved densely inside the preconditioner.
const SECTOR_BLOCK_LIMIT: usize = 1024;

/// Exact inverse of the undriven Liouvillian plus the trace row.
///
/// Without the drive, coherent terms keep the ket and bra excitation numbers
/// (p, q) and every jump lowers both, so the operator is block triangular in
/// the sectors (p, q). Sectors are solved densely from the highest p + q down;
/// the trace row lives in (0, 0), which comes last.
struct SectorSolver {
    a: CsrMatrix,
    sector: Vec<usize>,
    blocks: Vec<(Vec<usize>, ComplexLu)>,
}

impl SectorSolver {
    /// `None` when a sector is too large or singular.
    fn new(a: CsrMatrix, excitations: &[usize]) -> Result<Option<Self>> {
        let d = excitations.len();
        let mut keys: Vec<(usize, usize)> = (0..d * d)
            .map(|r| (excitations[r / d], excitations[r % d]))
            .collect();
        let mut order = keys.clone();
        order.sort_by(|x, y| (y.0 + y.1).cmp(&(x.0 + x.1)).then(x.cmp(y)));
        order.dedup();
        let mut sector = vec![0; d * d];
        let mut local = vec![0; d * d];
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); order.len()];
        for (r, key) in keys.iter_mut().enumerate() {
            let s = order
                .binary_search_by(|x| (key.0 + key.1).cmp(&(x.0 + x.1)).then(x.cmp(key)))
                .expect("sector listed");
            sector[r] = s;
            local[r] = members[s].len();
            members[s].push(r);
        }
        if members.iter().any(|m| m.len() > SECTOR_BLOCK_LIMIT) {
            return Ok(None);
        }
        let mut blocks = Vec::with_capacity(members.len());
        for (s, idx) in members.into_iter().enumerate() {
            let n = idx.len();
            let mut dense = vec![Complex64::zero(); n * n];
            for (lr, &r) in idx.iter().enumerate() {
                for p in a.row_ptr[r]..a.row_ptr[r + 1] {
                    let c = a.cols[p];
                    if sector[c] == s {
                        dense[lr * n + local[c]] += a.vals[p];
                    }
                }
            }
            let lu = ComplexLu::factor(n, dense)?;
            if lu.pivot_ratio < 1e-13 {
                return Ok(None);
            }
            blocks.push((idx, lu));
        }
        Ok(Some(SectorSolver { a, sector, blocks }))
    }
}

impl Preconditioner for SectorSolver {
    fn apply(&self, b: &[Complex64], x: &mut [Complex64]) {
        x.iter_mut().for_each(|v| *v = Complex64::zero());
        for (s, (idx, lu)) in self.blocks.iter().enumerate() {
            let rhs: Vec<Complex64> = idx
                .iter()
                .map(|&r| {
                    let mut v = b[r];
                    for p in self.a.row_ptr[r]..self.a.row_ptr[r + 1] {
                        let c = self.a.cols[p];
                        if self.sector[c] != s {
                            v -= self.a.vals[p] * x[c];
                        }
                    }
                    v
                })
                .collect();
            for (&r, v) in idx.iter().zip(lu.solve(&rhs)) {
                x[r] = v;
            }
        }
    }
}

pub fn lindblad_steady_state_with(
    model: &SystemModel,
    n_max: usize,
    opts: &LindbladOptions,
) -> Result<SteadyState> {
    model.validate()?;
    if n_max == 0 {
        return Err(Error::invalid(
            "n_max",
            "Fock truncation must be at least 1",
        ));
    }
    let m = model.modes.len();
    let d = match hilbert_dimension(n_max, m) {
        Some(d) if d <= opts.dimension_cap => d,
        Some(d) => {
            return Err(Error::Resource {
                required: d,
                cap: opts.dimension_cap,
            })
        }
        None => {
            return Err(Error::Resource {
                required: usize::MAX,
                cap: opts.dimension_cap,
            })
        }
    };
    let space = FockSpace {
        levels: n_max + 1,
        modes: m,
        fock: d / 2,
    };
    let scale = model.gamma2();
    let w = model.drive_omega;

    // Effective non-Hermitian Hamiltonian K = H − (i/2) Σ C†C without the
    // drive, one row list per state. The drive term is added separately so the
    // undriven operator can serve as a preconditioner.
    let mut k_rows: Vec<Vec<(usize, Complex64)>> = vec![Vec::new(); d];
    for s in 0..d {
        let exc = space.excited(s);
        let mut energy = if exc {
            (model.atom_omega - w) / scale
        } else {
            0.0
        };
        let mut loss =
            if exc { model.gamma1 / scale } else { 0.0 } + model.gamma_phi / (2.0 * scale);
        for (k, mode) in model.modes.iter().enumerate() {
            let n = space.occupation(s, k) as f64;
            energy += n * (mode.omega - w) / scale;
            loss += n * mode.kappa / scale;
        }
        k_rows[s].push((s, Complex64::new(energy, -0.5 * loss)));
        for (k, mode) in model.modes.iter().enumerate() {
            let n = space.occupation(s, k);
            let st = space.stride(k);
            // σ⁺b: |g,n> -> |e,n−1>, amplitude g√n; and its adjoint.
            if exc && n < n_max {
                k_rows[s].push((
                    s - space.fock + st,
                    Complex64::new(mode.g * ((n + 1) as f64).sqrt() / scale, 0.0),
                ));
            }
            if !exc && n > 0 {
                k_rows[s].push((
                    s + space.fock - st,
                    Complex64::new(mode.g * (n as f64).sqrt() / scale, 0.0),
                ));
            }
        }
    }

    let mut jumps: Vec<Jump> = Vec::with_capacity(m + 2);
    let lower: Jump = (0..d)
        .map(|s| (!space.excited(s)).then(|| (s + space.fock, (model.gamma1 / scale).sqrt())))
        .collect();
    jumps.push(lower);
    if model.gamma_phi > 0.0 {
        let amp = (model.gamma_phi / (2.0 * scale)).sqrt();
        jumps.push(
            (0..d)
                .map(|s| Some((s, if space.excited(s) { amp } else { -amp })))
                .collect(),
        );
    }
    for (k, mode) in model.modes.iter().enumerate() {
        let st = space.stride(k);
        let amp = (mode.kappa / scale).sqrt();
        jumps.push(
            (0..d)
                .map(|s| {
                    let n = space.occupation(s, k);
                    (n < n_max).then(|| (s + st, amp * ((n + 1) as f64).sqrt()))
                })
                .collect(),
        );
    }

    // Trace constraint added to the ρ_{00} row: (L + u·trᵀ) x = u.
    let big = d * d;
    let i = Complex64::i();
    // Drive Ω/2 (σ⁺ + σ⁻) couples |g,n> and |e,n>.
    let half_rabi = Complex64::new(0.5 * model.rabi / scale, 0.0);
    let partner = |s: usize| {
        if space.excited(s) {
            s - space.fock
        } else {
            s + space.fock
        }
    };
    let liouvillian = |drive: bool| {
        let rows = (0..big).map(|row| {
            let (a, b) = (row / d, row % d);
            let mut entries =
                Vec::with_capacity(k_rows[a].len() + k_rows[b].len() + jumps.len() + 3);
            entries.push((row, Complex64::zero()));
            for &(c, kac) in &k_rows[a] {
                entries.push((c * d + b, -i * kac));
            }
            for &(c, kbc) in &k_rows[b] {
                entries.push((a * d + c, i * kbc.conj()));
            }
            if drive {
                entries.push((partner(a) * d + b, -i * half_rabi));
                entries.push((a * d + partner(b), i * half_rabi));
            }
            for jump in &jumps {
                if let (Some((c, ca)), Some((e, cb))) = (jump[a], jump[b]) {
                    entries.push((c * d + e, Complex64::new(ca * cb, 0.0)));
                }
            }
            if row == 0 {
                for c in 0..d {
                    entries.push((c * d + c, Complex64::new(1.0, 0.0)));
                }
            }
            entries
        });
        CsrMatrix::from_rows(big, rows)
    };
    let a = liouvillian(true);
    let mut rhs = vec![Complex64::zero(); big];
    rhs[0] = Complex64::new(1.0, 0.0);

    let x = if big <= opts.dense_limit {
        let lu = ComplexLu::factor(big, a.to_dense()).map_err(|e| e.context("Liouvillian"))?;
        if lu.pivot_ratio < 1e-13 {
            return Err(Error::Numerical(format!(
                "steady state is not unique (Liouvillian pivot ratio {:.2e})",
                lu.pivot_ratio
            )));
        }
        let mut x = lu.solve(&rhs);
        let mut ax = vec![Complex64::zero(); big];
        a.matvec(&x, &mut ax);
        let r: Vec<Complex64> = rhs.iter().zip(&ax).map(|(b, v)| b - v).collect();
        for (xi, dx) in x.iter_mut().zip(lu.solve(&r)) {
            *xi += dx;
        }
        x
    } else {
        let excitations: Vec<usize> = (0..d)
            .map(|s| {
                space.excited(s) as usize + (0..m).map(|k| space.occupation(s, k)).sum::<usize>()
            })
            .collect();
        let solved = match SectorSolver::new(liouvillian(false), &excitations)? {
            Some(p) => gmres(&a, &p, &rhs, 80, opts.gmres_tol, 60),
            None => {
                let ilu = Ilu0::new(&a).map_err(|e| e.context("Liouvillian preconditioner"))?;
                gmres(&a, &ilu, &rhs, 80, opts.gmres_tol, 60)
            }
        };
        solved.map_err(|e| e.context("Liouvillian"))?.0
    };

    let mut ax = vec![Complex64::zero(); big];
    a.matvec(&x, &mut ax);
    let res_norm = ax
        .iter()
        .zip(&rhs)
        .map(|(v, b)| (v - b).norm_sqr())
        .sum::<f64>()
        .sqrt();
    let x_norm = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let a_norm = (0..big)
        .map(|r| {
            a.vals[a.row_ptr[r]..a.row_ptr[r + 1]]
                .iter()
                .map(|v| v.norm())
                .sum::<f64>()
        })
        .fold(0.0, f64::max);
    let residual = res_norm / (a_norm * x_norm);
    if !(residual < 1e-8) {
        return Err(Error::Numerical(format!(
            "steady-state residual {residual:.2e} too large"
        )));
    }

    // Hermitian part, then unit trace.
    let mut rho = vec![Complex64::zero(); big];
    for r in 0..d {
        for c in 0..d {
            rho[r * d + c] = 0.5 * (x[r * d + c] + x[c * d + r].conj());
        }
    }
    let trace: f64 = (0..d).map(|s| rho[s * d + s].re).sum();
    let trace_error = (trace - 1.0).abs();
    for v in rho.iter_mut() {
        *v /= trace;
    }
    let min_population = (0..d)
        .map(|s| rho[s * d + s].re)
        .fold(f64::INFINITY, f64::min);

    let sigma_minus: Complex64 = (0..space.fock).map(|s| rho[(s + space.fock) * d + s]).sum();
    let mode_amplitudes = (0..m)
        .map(|k| {
            let st = space.stride(k);
            (0..d)
                .filter_map(|s| {
                    let n = space.occupation(s, k);
                    (n > 0).then(|| (n as f64).sqrt() * rho[s * d + (s - st)])
                })
                .sum()
        })
        .collect();
    let (r, t) = reflection(sigma_minus, model.gamma1, model.rabi)?;
    Ok(SteadyState {
        sigma_minus,
        mode_amplitudes,
        r,
        t,
        diagnostics: Some(DensityDiagnostics {
            trace_error,
            min_population,
            hilbert_dim: d,
            residual,
        }),
    })
}
