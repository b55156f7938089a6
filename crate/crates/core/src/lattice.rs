// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Geometry of the stripe array and its infinite-lattice (Bloch) physics.
//!
//! The surface wave is treated as a scalar field ψ(x) obeying
//! ψ'' + (ω n(x)/v)² ψ = 0 with piecewise-constant index n(x): 1 on the free
//! surface and 1/(1−δ) under a stripe. ψ and ψ' are continuous at every
//! interface. Transfer matrices act on the state (ψ, ψ').
//!
//! Each cell of length P is laid out symmetrically: a free half-gap, the
//! stripe (length m·P) and another free half-gap. The trace and determinant of
//! the cell matrix do not depend on where the cell boundary is drawn, but the
//! symmetric layout makes the finite array mirror-symmetric.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::linalg::{Mat2, Mat2Diff};
use crate::roots::brent;
use crate::{Error, Result};

/// Geometric and material description of the phononic crystal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LatticeSpec {
    /// Mechanical period P (m); half of the transducer period.
    pub period: f64,
    /// Number of cells N (one stripe per cell).
    pub cells: usize,
    /// Fraction of each cell covered by metal.
    pub metallization: f64,
    /// Free-surface wave speed v (m/s).
    pub speed: f64,
    /// Fractional slowdown δ under a stripe.
    pub speed_reduction: f64,
    /// Stripe length / acoustic aperture W (m).
    pub aperture: f64,
}

impl Default for LatticeSpec {
    /// The device of the reference experiment: a = 0.95 µm, N_p = 140 pairs.
    fn default() -> Self {
        LatticeSpec {
            period: 0.475e-6,
            cells: 280,
            metallization: 0.65,
            speed: 3160.0,
            speed_reduction: 0.02,
            aperture: 12e-6,
        }
    }
}

impl LatticeSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.period > 0.0 && self.period.is_finite()) {
            return Err(Error::invalid(
                "period",
                format!("must be positive, got {}", self.period),
            ));
        }
        if self.cells == 0 {
            return Err(Error::invalid("cells", "need at least one cell"));
        }
        if !(self.metallization > 0.0 && self.metallization < 1.0) {
            return Err(Error::invalid(
                "metallization",
                format!("must lie in (0, 1), got {}", self.metallization),
            ));
        }
        if !(self.speed > 0.0 && self.speed.is_finite()) {
            return Err(Error::invalid(
                "speed",
                format!("must be positive, got {}", self.speed),
            ));
        }
        if !(self.speed_reduction >= 0.0 && self.speed_reduction < 1.0) {
            return Err(Error::invalid(
                "speed_reduction",
                format!("must lie in [0, 1), got {}", self.speed_reduction),
            ));
        }
        if !(self.aperture > 0.0 && self.aperture.is_finite()) {
            return Err(Error::invalid(
                "aperture",
                format!("must be positive, got {}", self.aperture),
            ));
        }
        Ok(())
    }

    /// Total length L = N·P.
    pub fn length(&self) -> f64 {
        self.cells as f64 * self.period
    }

    /// Transducer (electrical) period a = 2P.
    pub fn electrical_period(&self) -> f64 {
        2.0 * self.period
    }

    /// f_ac = v/a.
    pub fn center_frequency(&self) -> f64 {
        self.speed / self.electrical_period()
    }

    pub fn index_free(&self) -> f64 {
        1.0
    }

    pub fn index_metal(&self) -> f64 {
        1.0 / (1.0 - self.speed_reduction)
    }

    /// Effective index used for transverse confinement: 1 + m·δ.
    pub fn effective_index(&self) -> f64 {
        1.0 + self.metallization * self.speed_reduction
    }

    /// Zone-edge wavevector k_P = π/P.
    pub fn zone_edge(&self) -> f64 {
        PI / self.period
    }

    /// Wavevector quantum k_L = π/L.
    pub fn length_quantum(&self) -> f64 {
        PI / self.length()
    }

    /// First-order Bragg frequency v/(2P·n̄) with the length-averaged index n̄.
    pub fn bragg_frequency(&self) -> f64 {
        let m = self.metallization;
        let mean = m * self.index_metal() + (1.0 - m) * self.index_free();
        self.speed / (2.0 * self.period * mean)
    }

    /// Layers of one cell, in propagation order: free half, stripe, free half.
    pub fn cell_layers(&self) -> [Layer; 3] {
        let gap = 0.5 * (1.0 - self.metallization) * self.period;
        [
            Layer {
                index: self.index_free(),
                length: gap,
            },
            Layer {
                index: self.index_metal(),
                length: self.metallization * self.period,
            },
            Layer {
                index: self.index_free(),
                length: gap,
            },
        ]
    }
}

/// Homogeneous segment of the scalar-wave medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    pub index: f64,
    pub length: f64,
}

impl Layer {
    /// Transfer matrix of the segment and its derivative with respect to ω.
    pub fn matrix(&self, omega: Complex64, speed: f64) -> Mat2Diff {
        propagation(omega, self.index / speed, self.length)
    }
}

/// Propagation over `length` in a medium with slowness `slowness` = n/v.
pub(crate) fn propagation(omega: Complex64, slowness: f64, length: f64) -> Mat2Diff {
    let k = omega * slowness;
    let kd = k * length;
    let (s, c) = (kd.sin(), kd.cos());
    // sin(kd)/k, regular at k = 0
    let sk = if k.norm() * length < 1e-8 {
        Complex64::new(length, 0.0)
    } else {
        s / k
    };
    let value = Mat2([[c, sk], [-k * s, c]]);
    let d11 = -s * (slowness * length);
    let d12 = if k.norm() * length < 1e-8 {
        Complex64::new(0.0, 0.0)
    } else {
        (c * length - sk) * slowness / k
    };
    let d21 = -(s + kd * c) * slowness;
    Mat2Diff {
        value,
        deriv: Mat2([[d11, d12], [d21, d11]]),
    }
}

/// Cell transfer matrix M_cell(ω) acting on (ψ, ψ').
pub fn unit_cell_matrix(lattice: &LatticeSpec, omega: Complex64) -> Result<Mat2> {
    Ok(unit_cell_matrix_diff(lattice, omega)?.value)
}

/// Cell matrix with its ω-derivative.
pub fn unit_cell_matrix_diff(lattice: &LatticeSpec, omega: Complex64) -> Result<Mat2Diff> {
    lattice.validate()?;
    if omega.norm() == 0.0 || !omega.is_finite() {
        return Err(Error::Domain(format!(
            "cell matrix needs finite non-zero ω, got {omega}"
        )));
    }
    let [a, b, c] = lattice.cell_layers();
    Ok(c.matrix(omega, lattice.speed)
        * b.matrix(omega, lattice.speed)
        * a.matrix(omega, lattice.speed))
}

/// ½·Tr M_cell at real frequency f (Hz).
pub fn half_trace(lattice: &LatticeSpec, f: f64) -> f64 {
    let omega = Complex64::new(2.0 * PI * f, 0.0);
    let [a, b, c] = lattice.cell_layers();
    let m = c.matrix(omega, lattice.speed).value
        * b.matrix(omega, lattice.speed).value
        * a.matrix(omega, lattice.speed).value;
    0.5 * m.trace().re
}

/// First stop band (f_low, f_high) in Hz.
pub fn band_gap(lattice: &LatticeSpec) -> Result<(f64, f64)> {
    lattice.validate()?;
    if lattice.speed_reduction == 0.0 {
        return Err(Error::DegenerateGap);
    }
    let fb = lattice.bragg_frequency();
    let h = |f: f64| half_trace(lattice, f);
    let f_star = golden_extremum(h, 0.8 * fb, 1.2 * fb, false);
    if h(f_star) >= -1.0 {
        return Err(Error::DegenerateGap);
    }
    let xtol = 1e-13 * fb;
    let lo = brent(|f| h(f) + 1.0, 0.5 * fb, f_star, xtol)?;
    let hi = brent(|f| h(f) + 1.0, f_star, 1.5 * fb, xtol)?;
    if !(lo < hi) {
        return Err(Error::DegenerateGap);
    }
    Ok((lo, hi))
}

/// Golden-section search for the minimum (or maximum) of a unimodal function.
fn golden_extremum<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, maximize: bool) -> f64 {
    let g = |x: f64| if maximize { -f(x) } else { f(x) };
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (g(c), g(d));
    while (b - a).abs() > 1e-14 * (a.abs() + b.abs()) {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = g(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = g(d);
        }
    }
    0.5 * (a + b)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchLabel {
    Acoustic,
    Optical,
}

/// Samples (k in rad/m, f in Hz) of one dispersion branch, folded into the first zone.
#[derive(Debug, Clone, PartialEq)]
pub struct DispersionBranch {
    pub label: BranchLabel,
    pub samples: Vec<(f64, f64)>,
}

/// Bloch dispersion of the two branches bordering the first stop band.
pub fn dispersion(lattice: &LatticeSpec, k_grid: &[f64]) -> Result<[DispersionBranch; 2]> {
    lattice.validate()?;
    let kp = lattice.zone_edge();
    let fb = lattice.bragg_frequency();
    let (f_low, f_high) = if lattice.speed_reduction == 0.0 {
        let edge = lattice.speed / (2.0 * lattice.period);
        (edge, edge)
    } else {
        band_gap(lattice)?
    };
    let h = |f: f64| half_trace(lattice, f);
    // Upper end of the optical branch: first return of ½Tr to +1 near 2 f_B.
    let f_max = golden_extremum(h, 1.7 * fb, 2.3 * fb, true);
    let f_top = if h(f_max) > 1.0 {
        brent(|f| h(f) - 1.0, f_high, f_max, 1e-13 * fb)?
    } else {
        f_max
    };

    let xtol = 1e-13 * fb;
    let mut acoustic = Vec::with_capacity(k_grid.len());
    let mut optical = Vec::with_capacity(k_grid.len());
    for &k in k_grid {
        if !(k > 0.0 && k <= kp * (1.0 + 1e-12)) {
            return Err(Error::Domain(format!(
                "Bloch wavevector {k:e} outside (0, π/P]"
            )));
        }
        let target = (k * lattice.period).cos();
        let fail = |e: Error| {
            Error::Numerical(format!(
                "dispersion root bracketing failed at k = {k:e} rad/m: {e}"
            ))
        };
        // At the zone edge the root is the band edge itself, where rounding
        // can leave no sign change.
        let fa = if target <= h(f_low) {
            f_low
        } else {
            brent(|f| h(f) - target, 1e-9 * fb, f_low, xtol).map_err(fail)?
        };
        let fo = if target <= h(f_high) {
            f_high
        } else {
            brent(|f| h(f) - target, f_high, f_top, xtol).map_err(fail)?
        };
        acoustic.push((k, fa));
        optical.push((k, fo));
    }
    Ok([
        DispersionBranch {
            label: BranchLabel::Acoustic,
            samples: acoustic,
        },
        DispersionBranch {
            label: BranchLabel::Optical,
            samples: optical,
        },
    ])
}

/// Transverse standing wave across the aperture: A_j(y) = √2·sin(jπy/W).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseMode {
    pub j: u32,
    /// k_y = π·j/W (rad/m).
    pub ky: f64,
    /// Amplitude prefactor of the profile (√2).
    pub norm: f64,
}

impl TransverseMode {
    pub fn new(j: u32, aperture: f64) -> Self {
        TransverseMode {
            j,
            ky: PI * j as f64 / aperture,
            norm: 2f64.sqrt(),
        }
    }

    pub fn profile(&self, y: f64) -> f64 {
        self.norm * (self.ky * y).sin()
    }
}

/// Odd transverse orders whose incidence angle exceeds the total-reflection angle.
pub fn transverse_modes(lattice: &LatticeSpec) -> Result<Vec<TransverseMode>> {
    lattice.validate()?;
    let kx = 2.0 * PI / lattice.electrical_period();
    let critical = (1.0 / lattice.effective_index()).asin();
    let mut out = Vec::new();
    let mut j = 1u32;
    loop {
        let t = TransverseMode::new(j, lattice.aperture);
        if kx.atan2(t.ky) <= critical {
            break;
        }
        out.push(t);
        j += 2;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference() -> LatticeSpec {
        LatticeSpec::default()
    }

    #[test]
    fn derived_quantities() {
        let l = reference();
        assert!((l.length() - 133e-6).abs() < 1e-12);
        assert!((l.center_frequency() - 3.326_315_789e9).abs() < 1e3);
        assert!((l.effective_index() - 1.013).abs() < 1e-12);
    }

    #[test]
    fn invalid_lattices_rejected() {
        let mut l = reference();
        l.metallization = 1.0;
        assert!(l.validate().is_err());
        let mut l = reference();
        l.cells = 0;
        assert!(unit_cell_matrix(&l, Complex64::new(1e10, 0.0)).is_err());
        assert!(unit_cell_matrix(&reference(), Complex64::new(0.0, 0.0)).is_err());
    }

    #[test]
    fn uniform_medium_trace_is_free_propagation() {
        let mut l = reference();
        l.speed_reduction = 0.0;
        for f in [1.0e9, 3.1e9, 3.3e9, 5.0e9] {
            let w = 2.0 * PI * f;
            let m = unit_cell_matrix(&l, Complex64::new(w, 0.0)).unwrap();
            let expect = 2.0 * (w * l.period / l.speed).cos();
            assert!((m.trace().re - expect).abs() < 1e-12, "f = {f}");
            assert!(m.trace().im.abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let l = reference();
        let w = Complex64::new(2.0 * PI * 3.27e9, -2.0 * PI * 1e6);
        let h = 1e3 * 2.0 * PI;
        let d = unit_cell_matrix_diff(&l, w).unwrap().deriv;
        let scale = d.norm1();
        let fd = (unit_cell_matrix(&l, w + h).unwrap() - unit_cell_matrix(&l, w - h).unwrap()).0;
        for i in 0..2 {
            for j in 0..2 {
                let num = fd[i][j] / (2.0 * h);
                assert!(
                    (num - d.0[i][j]).norm() <= 1e-7 * scale,
                    "{i}{j}: {num} vs {}",
                    d.0[i][j]
                );
            }
        }
    }

    #[test]
    fn zero_contrast_has_no_gap() {
        let mut l = reference();
        l.speed_reduction = 0.0;
        assert_eq!(band_gap(&l), Err(Error::DegenerateGap));
    }

    #[test]
    fn transverse_confinement_reference_geometry() {
        let js: Vec<u32> = transverse_modes(&reference())
            .unwrap()
            .iter()
            .map(|t| t.j)
            .collect();
        assert_eq!(js, [1, 3]);
        let mut flat = reference();
        flat.speed_reduction = 0.0;
        assert!(transverse_modes(&flat).unwrap().is_empty());
    }

    #[test]
    fn transverse_profile_normalized() {
        let t = TransverseMode::new(3, 12e-6);
        let n = 20_000;
        let dy = 12e-6 / n as f64;
        let ys: Vec<f64> = (0..=n).map(|i| t.profile(i as f64 * dy).powi(2)).collect();
        let mean = crate::linalg::trapezoid(&ys, dy) / 12e-6;
        assert!((mean - 1.0).abs() < 1e-9);
        assert!(t.profile(0.0).abs() < 1e-15 && t.profile(12e-6).abs() < 1e-12);
    }
}
