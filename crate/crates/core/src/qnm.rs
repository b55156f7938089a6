// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Quasinormal modes of a finite, open layered structure.
//!
//! A quasinormal mode has purely outgoing waves on both sides. With the state
//! (ψ, ψ') launched at x = 0 as the left-going wave (1, −i·k₀), the right end
//! must satisfy ψ'(L) = i·k₀·ψ(L). For the total matrix M this is
//!
//! ```text
//! F(ω) = M₂₁ − i·k₀·(M₁₁ + M₂₂) − k₀²·M₁₂ = 0,    k₀ = ω/v.
//! ```
//!
//! Roots are complex with Im ω < 0 (decay in time, e^{−iωt} convention). They
//! are seeded from minima of |F| on a real frequency grid and polished by
//! Newton iteration with the analytic derivative.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::lattice::{band_gap, unit_cell_matrix, LatticeSpec, Layer, TransverseMode};
use crate::linalg::{trapezoid, Mat2Diff};
use crate::roots::newton_complex;
use crate::{Error, Result};

/// Field samples per lattice cell.
pub const SAMPLES_PER_CELL: usize = 32;
/// Required relative residual of a polished root.
pub const ROOT_RESIDUAL: f64 = 1e-9;

/// A finite structure made of `repeats` copies of `cell`, embedded in a free
/// medium of index 1 and speed `speed` on both sides.
#[derive(Debug, Clone, PartialEq)]
pub struct OpenStack {
    pub cell: Vec<Layer>,
    pub repeats: usize,
    pub speed: f64,
}

impl OpenStack {
    pub fn from_lattice(lattice: &LatticeSpec) -> Self {
        OpenStack {
            cell: lattice.cell_layers().to_vec(),
            repeats: lattice.cells,
            speed: lattice.speed,
        }
    }

    pub fn length(&self) -> f64 {
        self.repeats as f64 * self.cell.iter().map(|l| l.length).sum::<f64>()
    }

    fn cell_matrix(&self, omega: Complex64) -> Mat2Diff {
        self.cell.iter().fold(Mat2Diff::IDENTITY, |acc, layer| {
            layer.matrix(omega, self.speed) * acc
        })
    }

    /// Total transfer matrix and its ω-derivative (binary powering).
    pub fn total_matrix(&self, omega: Complex64) -> Mat2Diff {
        let mut base = self.cell_matrix(omega);
        let mut acc = Mat2Diff::IDENTITY;
        let mut n = self.repeats;
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            n >>= 1;
        }
        acc
    }

    /// Outgoing-wave condition F(ω)/k₀ and its derivative.
    pub fn boundary_condition(&self, omega: Complex64) -> (Complex64, Complex64, f64) {
        let t = self.total_matrix(omega);
        let (m, dm) = (t.value.0, t.deriv.0);
        let i = Complex64::i();
        let slow = 1.0 / self.speed;
        let k0 = omega * slow;
        let value = m[1][0] / k0 - i * (m[0][0] + m[1][1]) - k0 * m[0][1];
        let deriv = dm[1][0] / k0
            - m[1][0] * slow / (k0 * k0)
            - i * (dm[0][0] + dm[1][1])
            - m[0][1] * slow
            - k0 * dm[0][1];
        let scale = (m[1][0] / k0).norm() + m[0][0].norm() + m[1][1].norm() + (k0 * m[0][1]).norm();
        (value, deriv, scale)
    }

    /// Relative residual |F|/scale at ω.
    pub fn residual(&self, omega: Complex64) -> f64 {
        let (v, _, s) = self.boundary_condition(omega);
        v.norm() / s
    }

    /// Complex roots of the outgoing-wave condition with Re(ω)/2π inside `window` (Hz).
    pub fn find_roots(&self, window: (f64, f64)) -> Result<Vec<Complex64>> {
        let (f_lo, f_hi) = window;
        if !(f_lo > 0.0 && f_hi > f_lo) {
            return Err(Error::Domain(format!(
                "frequency window ({f_lo:e}, {f_hi:e}) must be positive and increasing"
            )));
        }
        // grid step v/(32 L), well below one quarter of the free mode spacing
        let df = self.speed / (32.0 * self.length());
        let pad = 4.0 * df;
        let start = (f_lo - pad).max(0.5 * df);
        let count = ((f_hi + pad - start) / df).ceil() as usize + 1;
        let grid: Vec<f64> = (0..count).map(|k| start + k as f64 * df).collect();
        let mags: Vec<f64> = grid
            .iter()
            .map(|&f| {
                let (v, _, _) = self.boundary_condition(Complex64::new(2.0 * PI * f, 0.0));
                v.norm_sqr()
            })
            .collect();

        let mut roots: Vec<Complex64> = Vec::new();
        for k in 1..count - 1 {
            if !(mags[k] < mags[k - 1] && mags[k] <= mags[k + 1]) {
                continue;
            }
            // |F|² ≈ a (f − f₀)² + b near a root at f₀ − iγ, so γ² = b/a.
            let (y0, y1, y2) = (mags[k - 1], mags[k], mags[k + 1]);
            // round-off ripple on a featureless |F|², not a resonance
            if y0 - 2.0 * y1 + y2 <= 1e-9 * y1 {
                continue;
            }
            let curv = (y0 - 2.0 * y1 + y2) / (df * df);
            let shift = if curv > 0.0 {
                -0.5 * (y2 - y0) / (curv * df)
            } else {
                0.0
            };
            let f0 = grid[k] + shift.clamp(-df, df);
            let a = 0.5 * curv;
            let b = (y1 - a * (grid[k] - f0).powi(2)).max(0.0);
            let gamma = if a > 0.0 {
                (b / a).sqrt().clamp(0.05 * df, 50.0 * df)
            } else {
                df
            };
            let seed = Complex64::new(2.0 * PI * f0, -2.0 * PI * gamma);
            let polished = newton_complex(
                |w| {
                    let (v, d, _) = self.boundary_condition(w);
                    (v, d)
                },
                seed,
                2.0 * PI * 4.0 * df,
                1e-14,
                200,
            )
            .map_err(|e| {
                Error::Numerical(format!("QNM polish from seed {:.9e} Hz failed: {e}", f0))
            })?;
            let w = polished.root;
            let res = self.residual(w);
            if res > ROOT_RESIDUAL {
                return Err(Error::Numerical(format!(
                    "QNM at {:.9e} Hz polished only to residual {res:e}",
                    w.re / (2.0 * PI)
                )));
            }
            let f = w.re / (2.0 * PI);
            if f < f_lo || f > f_hi {
                continue;
            }
            if w.im >= 0.0 {
                return Err(Error::Numerical(format!("non-decaying root at {w}")));
            }
            if roots.iter().all(|r| (r - w).norm() > 1e-8 * w.norm()) {
                roots.push(w);
            }
        }
        roots.sort_by(|a, b| a.re.total_cmp(&b.re));
        Ok(roots)
    }

    /// Samples (ψ, ψ') at spacing `dx` over [0, L] for the mode launched as (1, −i k₀).
    pub fn sample_field(&self, omega: Complex64, dx: f64) -> (Vec<Complex64>, Vec<Complex64>) {
        let total = self.length();
        let n = (total / dx).round() as usize;
        let k0 = omega / self.speed;
        let mut state = [Complex64::new(1.0, 0.0), -Complex64::i() * k0];
        let layers: Vec<Layer> = (0..self.repeats)
            .flat_map(|_| self.cell.iter().copied())
            .collect();
        let mut psi = Vec::with_capacity(n + 1);
        let mut dpsi = Vec::with_capacity(n + 1);
        let mut layer = 0usize;
        let mut layer_start = 0.0;
        for k in 0..=n {
            let x = (k as f64 * dx).min(total);
            while layer + 1 < layers.len() && x > layer_start + layers[layer].length {
                state = layers[layer].matrix(omega, self.speed).value.apply(state);
                layer_start += layers[layer].length;
                layer += 1;
            }
            let local = layers[layer]
                .matrix_at(omega, self.speed, x - layer_start)
                .apply(state);
            psi.push(local[0]);
            dpsi.push(local[1]);
        }
        (psi, dpsi)
    }
}

impl Layer {
    fn matrix_at(&self, omega: Complex64, speed: f64, distance: f64) -> crate::linalg::Mat2 {
        Layer {
            index: self.index,
            length: distance,
        }
        .matrix(omega, speed)
        .value
    }
}

/// A quasinormal mode of the finite lattice.
#[derive(Debug, Clone, PartialEq)]
pub struct QuasiNormalMode {
    /// Longitudinal order i (0 is the first mode below the stop band).
    pub index: i32,
    /// Transverse order j attached to this record (1 for a bare longitudinal mode).
    pub transverse: u32,
    /// Complex angular frequency ω̃ (rad/s), Im < 0.
    pub omega: Complex64,
    /// Re ω̃ / (2 |Im ω̃|).
    pub quality: f64,
    /// Ladder wavevector k_x (rad/m).
    pub kx: f64,
    /// A_i(x) on the uniform grid x_k = k·dx, normalized to unit mean square.
    pub field: Vec<Complex64>,
    /// dA_i/dx on the same grid and with the same normalization.
    pub gradient: Vec<Complex64>,
    pub dx: f64,
}

impl QuasiNormalMode {
    /// Re ω̃ / 2π in Hz.
    pub fn frequency(&self) -> f64 {
        self.omega.re / (2.0 * PI)
    }

    pub fn length(&self) -> f64 {
        self.dx * (self.field.len() - 1) as f64
    }

    /// (1/L) ∫ |A|² dx.
    pub fn mean_square(&self) -> f64 {
        mean_square(&self.field, self.dx)
    }
}

pub(crate) fn mean_square(field: &[Complex64], dx: f64) -> f64 {
    let sq: Vec<f64> = field.iter().map(|a| a.norm_sqr()).collect();
    trapezoid(&sq, dx) / (dx * (field.len() - 1) as f64)
}

/// Ladder wavevector for longitudinal order i.
pub fn ladder_kx(lattice: &LatticeSpec, index: i32) -> f64 {
    let (kp, kl) = (lattice.zone_edge(), lattice.length_quantum());
    if index > 0 {
        kp + index as f64 * kl
    } else {
        kp + (index - 1) as f64 * kl
    }
}

/// Quasinormal modes of the lattice with Re(f) inside `window` (Hz), sorted by frequency.
pub fn find_qnms(lattice: &LatticeSpec, window: (f64, f64)) -> Result<Vec<QuasiNormalMode>> {
    lattice.validate()?;
    let stack = OpenStack::from_lattice(lattice);
    let roots = stack.find_roots(window)?;
    let split = match band_gap(lattice) {
        Ok((lo, hi)) => 0.5 * (lo + hi),
        Err(_) => lattice.bragg_frequency(),
    };
    let (kp, kl) = (lattice.zone_edge(), lattice.length_quantum());
    let dx = lattice.period / SAMPLES_PER_CELL as f64;
    let mut modes: Vec<QuasiNormalMode> = Vec::with_capacity(roots.len());
    for w in roots {
        let half = unit_cell_matrix(lattice, w)?.trace() * 0.5;
        let bloch = half.acos().re / lattice.period;
        let q_est = (kp - bloch) / kl;
        let q = q_est.round() as i32;
        let f = w.re / (2.0 * PI);
        if q < 1 {
            return Err(Error::Numerical(format!(
                "mode at {f:.9e} Hz maps onto k_x = k_P (ladder estimate {q_est:.3})"
            )));
        }
        let index = if f < split { 1 - q } else { q };
        if let Some(other) = modes.iter().find(|m| m.index == index) {
            return Err(Error::Numerical(format!(
                "modes at {:.9e} Hz and {f:.9e} Hz both claim longitudinal index {index}",
                other.frequency()
            )));
        }
        let (mut field, mut gradient) = stack.sample_field(w, dx);
        let norm = mean_square(&field, dx).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::Numerical(format!(
                "field of mode {index} cannot be normalized"
            )));
        }
        field.iter_mut().for_each(|a| *a /= norm);
        gradient.iter_mut().for_each(|a| *a /= norm);
        modes.push(QuasiNormalMode {
            index,
            transverse: 1,
            omega: w,
            quality: w.re / (2.0 * w.im.abs()),
            kx: ladder_kx(lattice, index),
            field,
            gradient,
            dx,
        });
    }
    Ok(modes)
}

/// Energy-based quality factor: ω·(stored energy) / (power leaving both ends).
pub fn quality_factor(mode: &QuasiNormalMode, lattice: &LatticeSpec) -> Result<f64> {
    lattice.validate()?;
    if mode.field.len() < 2 || mode.field.len() != mode.gradient.len() {
        return Err(Error::Precondition("mode carries no field samples".into()));
    }
    let w = mode.omega.re;
    let v = lattice.speed;
    let layers = lattice.cell_layers();
    let index_at = |x: f64| {
        let mut local = x - (x / lattice.period).floor() * lattice.period;
        for l in &layers {
            if local < l.length {
                return l.index;
            }
            local -= l.length;
        }
        layers[2].index
    };
    let density = |k: usize, n: f64| {
        0.25 * ((n * w / v).powi(2) * mode.field[k].norm_sqr() + mode.gradient[k].norm_sqr())
    };
    let mut stored = 0.0;
    for k in 0..mode.field.len() - 1 {
        let n = index_at((k as f64 + 0.5) * mode.dx);
        stored += 0.5 * (density(k, n) + density(k + 1, n)) * mode.dx;
    }
    let k0 = w / v;
    let ends = mode.field[0].norm_sqr() + mode.field[mode.field.len() - 1].norm_sqr();
    let leaked = 0.5 * w * k0 * ends;
    if mode.omega.im == 0.0
        || !(leaked > f64::MIN_POSITIVE * 1e10)
        || !(leaked / (w * stored) > 1e-14)
    {
        return Err(Error::Numerical(format!(
            "leakage of mode {} underflows; imaginary part of ω unresolved",
            mode.index
        )));
    }
    Ok(w * stored / leaked)
}

/// f_ij = f_i · sqrt(1 + (k_y/k_x)²).
pub fn mode_frequency_2d(mode: &QuasiNormalMode, transverse: &TransverseMode) -> f64 {
    mode.frequency() * (1.0 + (transverse.ky / mode.kx).powi(2)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_slab_matches_fabry_perot() {
        let (n, len, v) = (1.5, 100e-6, 3000.0);
        let stack = OpenStack {
            cell: alloc::vec![Layer {
                index: n,
                length: len
            }],
            repeats: 1,
            speed: v,
        };
        let roots = stack.find_roots((0.5e9, 0.7e9)).unwrap();
        assert!(roots.len() >= 10);
        let spacing = v / (2.0 * n * len);
        let r = (n - 1.0) / (n + 1.0);
        let decay = v / (n * len) * r.ln();
        for w in &roots {
            let q = (w.re / (2.0 * PI) / spacing).round();
            assert!(((w.re / (2.0 * PI)) - q * spacing).abs() < 1e-6 * spacing * q);
            assert!((w.im - decay).abs() < 1e-6 * decay.abs());
        }
        for pair in roots.windows(2) {
            let d = (pair[1].re - pair[0].re) / (2.0 * PI);
            assert!((d - spacing).abs() < 1e-6 * spacing);
        }
    }

    #[test]
    fn contrast_free_lattice_has_no_modes() {
        let mut l = LatticeSpec::default();
        l.speed_reduction = 0.0;
        assert!(find_qnms(&l, (3.2e9, 3.35e9)).unwrap().is_empty());
    }

    #[test]
    fn ladder_skips_zone_edge() {
        let l = LatticeSpec::default();
        let kp = l.zone_edge();
        assert!(ladder_kx(&l, 0) < kp && ladder_kx(&l, 1) > kp);
        assert!((ladder_kx(&l, 1) - ladder_kx(&l, 0) - 2.0 * l.length_quantum()).abs() < 1e-6);
    }

    #[test]
    fn identity_transverse_shift() {
        let l = LatticeSpec::default();
        let mode = QuasiNormalMode {
            index: 0,
            transverse: 1,
            omega: Complex64::new(2.0 * PI * 3.26e9, -1e7),
            quality: 1.0,
            kx: ladder_kx(&l, 0),
            field: alloc::vec![],
            gradient: alloc::vec![],
            dx: 1.0,
        };
        let flat = TransverseMode {
            j: 1,
            ky: 0.0,
            norm: 2f64.sqrt(),
        };
        assert_eq!(mode_frequency_2d(&mode, &flat), mode.frequency());
        let j1 = TransverseMode::new(1, l.aperture);
        let shift = mode_frequency_2d(&mode, &j1) - mode.frequency();
        assert!(shift > 0.0 && shift < 3e6);
    }
}
