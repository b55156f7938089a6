// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Driven atom coupled to lossy phonon modes, in the frame rotating at the
//! probe frequency.
//!
//! Two steady-state solvers share one [`SystemModel`]: the weak-drive linear
//! response ([`semiclassical_response`]) and the full master equation
//! ([`lindblad_steady_state`]).

mod lindblad;
pub mod sparse;

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::linalg::ComplexLu;
use crate::{Error, Result};

pub use lindblad::{
    lindblad_steady_state, lindblad_steady_state_with, LindbladOptions, DEFAULT_DIMENSION_CAP,
};

/// One bosonic mode seen by the atom. All quantities in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeParams {
    pub omega: f64,
    /// Energy decay rate κ = ω/Q.
    pub kappa: f64,
    pub g: f64,
}

impl ModeParams {
    pub fn from_quality(omega: f64, quality: f64, g: f64) -> Self {
        ModeParams {
            omega,
            kappa: omega / quality,
            g,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SystemModel {
    pub atom_omega: f64,
    pub gamma1: f64,
    pub gamma_phi: f64,
    pub modes: Vec<ModeParams>,
    pub drive_omega: f64,
    /// Rabi frequency Ω of the probe.
    pub rabi: f64,
}

impl SystemModel {
    pub fn gamma2(&self) -> f64 {
        0.5 * self.gamma1 + self.gamma_phi
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.atom_omega > 0.0 && self.atom_omega.is_finite()) {
            return Err(Error::invalid("atom_omega", "must be positive"));
        }
        if !(self.gamma1 > 0.0 && self.gamma1.is_finite()) {
            return Err(Error::invalid("gamma1", "must be positive"));
        }
        if !(self.gamma_phi >= 0.0 && self.gamma_phi.is_finite()) {
            return Err(Error::invalid("gamma_phi", "must be non-negative"));
        }
        if !(self.rabi > 0.0 && self.rabi.is_finite()) {
            return Err(Error::invalid("rabi", "drive amplitude must be positive"));
        }
        if !((self.drive_omega - self.atom_omega).abs() < self.atom_omega / 10.0) {
            return Err(Error::Domain(format!(
                "drive detuning {:.4e} rad/s breaks the rotating-wave condition |Δ| < ω_a/10",
                self.drive_omega - self.atom_omega
            )));
        }
        for (k, m) in self.modes.iter().enumerate() {
            if !(m.kappa > 0.0 && m.kappa.is_finite()) {
                return Err(Error::invalid(
                    "kappa",
                    format!("mode {k}: decay rate must be positive"),
                ));
            }
            if !(m.g >= 0.0 && m.g.is_finite()) {
                return Err(Error::invalid(
                    "g",
                    format!("mode {k}: coupling must be non-negative"),
                ));
            }
            if !(m.omega > 0.0 && m.omega.is_finite()) {
                return Err(Error::invalid(
                    "omega",
                    format!("mode {k}: frequency must be positive"),
                ));
            }
        }
        Ok(())
    }
}

/// Diagnostics of a density-operator solve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityDiagnostics {
    /// |Tr ρ − 1| of the raw solution before renormalization.
    pub trace_error: f64,
    /// Smallest diagonal element of ρ.
    pub min_population: f64,
    pub hilbert_dim: usize,
    /// Relative residual ‖Lρ‖/‖L‖‖ρ‖ after refinement.
    pub residual: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SteadyState {
    pub sigma_minus: Complex64,
    pub mode_amplitudes: Vec<Complex64>,
    pub r: Complex64,
    pub t: Complex64,
    pub diagnostics: Option<DensityDiagnostics>,
}

/// r = iΓ₁⟨σ⁻⟩/Ω and t = 1 − r.
pub fn reflection(
    sigma_minus: Complex64,
    gamma1: f64,
    rabi: f64,
) -> Result<(Complex64, Complex64)> {
    if !(rabi > 0.0) {
        return Err(Error::invalid("rabi", "drive amplitude must be positive"));
    }
    let r = Complex64::i() * gamma1 * sigma_minus / rabi;
    Ok((r, Complex64::new(1.0, 0.0) - r))
}

/// Linear response of the atom and modes to a weak probe.
pub fn semiclassical_response(model: &SystemModel) -> Result<SteadyState> {
    model.validate()?;
    if model.rabi > model.gamma1 / 10.0 * (1.0 + 1e-12) {
        return Err(Error::Precondition(format!(
            "drive Ω = {:.4e} rad/s exceeds Γ1/10 = {:.4e} rad/s (linear regime)",
            model.rabi,
            model.gamma1 / 10.0
        )));
    }
    let (s, beta) = linear_amplitudes(model)?;
    let (r, t) = reflection(s, model.gamma1, model.rabi)?;
    Ok(SteadyState {
        sigma_minus: s,
        mode_amplitudes: beta,
        r,
        t,
        diagnostics: None,
    })
}

/// Solves the (1+M) linear system without the drive-strength precondition.
pub(crate) fn linear_amplitudes(model: &SystemModel) -> Result<(Complex64, Vec<Complex64>)> {
    let i = Complex64::i();
    let w = model.drive_omega;
    let n = 1 + model.modes.len();
    // Rates are scaled by Γ2 so the matrix entries are O(1).
    let scale = model.gamma2();
    let mut a = vec![Complex64::new(0.0, 0.0); n * n];
    let mut b = vec![Complex64::new(0.0, 0.0); n];
    a[0] = i * (model.atom_omega - w) / scale + model.gamma2() / scale;
    b[0] = -i * (model.rabi / 2.0) / scale;
    for (k, m) in model.modes.iter().enumerate() {
        let row = k + 1;
        a[row] = i * m.g / scale;
        a[row * n] = i * m.g / scale;
        a[row * n + row] = i * (m.omega - w) / scale + m.kappa / (2.0 * scale);
    }
    let lu = ComplexLu::factor(n, a).map_err(|e| e.context("linear response"))?;
    if lu.pivot_ratio < 1e-14 {
        return Err(Error::Numerical(format!(
            "linear response system is singular (pivot ratio {:.2e})",
            lu.pivot_ratio
        )));
    }
    let x = lu.solve(&b);
    Ok((x[0], x[1..].to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn bare(detuning: f64) -> SystemModel {
        let g1 = 2.0 * PI * 8e6;
        let g2 = 2.0 * PI * 11e6;
        let wa = 2.0 * PI * 3.0e9;
        SystemModel {
            atom_omega: wa,
            gamma1: g1,
            gamma_phi: g2 - g1 / 2.0,
            modes: vec![],
            drive_omega: wa + detuning,
            rabi: 2.0 * PI * 1e5,
        }
    }

    #[test]
    fn resonant_bare_atom_reflects_gamma1_over_two_gamma2() {
        let s = semiclassical_response(&bare(0.0)).unwrap();
        assert!((s.r.re - 8.0 / 22.0).abs() < 1e-12);
        assert!(s.r.im.abs() < 1e-12);
        assert_eq!(s.t, Complex64::new(1.0, 0.0) - s.r);
    }

    #[test]
    fn far_detuned_atom_is_transparent() {
        let s = semiclassical_response(&bare(2.0 * PI * 250e6)).unwrap();
        assert!(s.r.norm() < 0.03);
    }

    #[test]
    fn strong_drive_is_rejected() {
        let mut m = bare(0.0);
        m.rabi = m.gamma1;
        assert!(matches!(
            semiclassical_response(&m),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn rotating_wave_limit_is_enforced() {
        let mut m = bare(0.0);
        m.drive_omega = m.atom_omega * 1.2;
        assert!(matches!(m.validate(), Err(Error::Domain(_))));
    }

    #[test]
    fn zero_sigma_gives_unit_transmission() {
        let (r, t) = reflection(Complex64::new(0.0, 0.0), 1.0, 0.1).unwrap();
        assert_eq!(r, Complex64::new(0.0, 0.0));
        assert_eq!(t, Complex64::new(1.0, 0.0));
        assert!(reflection(Complex64::new(0.0, 0.0), 1.0, 0.0).is_err());
    }
}
