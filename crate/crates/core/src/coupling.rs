// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Piezoelectric potential induced in the transducer by a mode, and the
//! resulting atom–mode coupling ħg = ξ₀·C_IDT·V.
//!
//! The transducer is modeled as a step function p_e(x): +1 on one polarity,
//! −1 on the other, 0 in the gaps. One electrode sits at the center of every
//! lattice cell and polarities alternate, so p_e has period a = 2P. Integrated
//! over the aperture, the transverse profile √2·sin(jπy/W) contributes a factor
//! 2√2/(jπ) for odd j and zero for even j.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::consts::HBAR;
use crate::lattice::LatticeSpec;
use crate::qnm::mean_square;
use crate::{Error, Result};

/// Tolerance on the unit mean-square normalization of a field.
pub const NORMALIZATION_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PiezoConstants {
    /// e_pz/ε (V/m).
    pub epz_over_eps: f64,
    /// Substrate mass density ρ (kg/m³).
    pub density: f64,
}

impl Default for PiezoConstants {
    /// Quartz: e_pz/ε ≈ 1.6 V/nm, ρ = 2650 kg/m³.
    fn default() -> Self {
        PiezoConstants {
            epz_over_eps: 1.6e9,
            density: 2650.0,
        }
    }
}

impl PiezoConstants {
    pub fn validate(&self) -> Result<()> {
        if !(self.epz_over_eps > 0.0 && self.epz_over_eps.is_finite()) {
            return Err(Error::invalid("epz_over_eps", "must be positive"));
        }
        if !(self.density > 0.0 && self.density.is_finite()) {
            return Err(Error::invalid("density", "must be positive"));
        }
        Ok(())
    }
}

/// Interdigital electrode layout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElectrodeGeometry {
    /// a (m): one electrode of each polarity per period.
    pub electrical_period: f64,
    /// Width of every electrode (m).
    pub electrode_width: f64,
    /// Number of electrode pairs N_p.
    pub pair_count: usize,
}

impl ElectrodeGeometry {
    pub fn from_lattice(lattice: &LatticeSpec) -> Result<Self> {
        lattice.validate()?;
        if lattice.cells % 2 != 0 {
            return Err(Error::invalid(
                "cells",
                format!(
                    "electrode pairs need an even cell count, got {}",
                    lattice.cells
                ),
            ));
        }
        Ok(ElectrodeGeometry {
            electrical_period: lattice.electrical_period(),
            electrode_width: lattice.metallization * lattice.period,
            pair_count: lattice.cells / 2,
        })
    }

    pub fn length(&self) -> f64 {
        self.pair_count as f64 * self.electrical_period
    }

    fn pitch(&self) -> f64 {
        0.5 * self.electrical_period
    }

    /// Polarity of each grid interval, with electrode edges snapped to grid nodes.
    pub fn polarity_grid(&self, samples_per_cell: usize) -> Vec<i8> {
        let s = samples_per_cell as f64;
        let margin = 0.5 * (1.0 - self.electrode_width / self.pitch());
        let lo = (margin * s).round() as usize;
        let hi = ((1.0 - margin) * s).round() as usize;
        let cells = 2 * self.pair_count;
        let mut out = Vec::with_capacity(cells * samples_per_cell);
        for c in 0..cells {
            let sign: i8 = if c % 2 == 0 { 1 } else { -1 };
            out.extend((0..samples_per_cell).map(|k| if k >= lo && k < hi { sign } else { 0 }));
        }
        out
    }
}

/// p_e(x) ∈ {−1, 0, +1}.
pub fn electrode_function(geom: &ElectrodeGeometry, x: f64) -> Result<i8> {
    let len = geom.length();
    if !(0.0..=len).contains(&x) {
        return Err(Error::Domain(format!(
            "x = {x:e} m lies outside the transducer [0, {len:e}]"
        )));
    }
    let pitch = geom.pitch();
    let cell = ((x / pitch).floor() as usize).min(2 * geom.pair_count - 1);
    let local = x - cell as f64 * pitch;
    let half_gap = 0.5 * (pitch - geom.electrode_width);
    if local >= half_gap && local <= pitch - half_gap {
        Ok(if cell % 2 == 0 { 1 } else { -1 })
    } else {
        Ok(0)
    }
}

/// z₀ = sqrt(ħ / (2ρ W L v)).
pub fn zero_point_displacement(lattice: &LatticeSpec, piezo: &PiezoConstants) -> f64 {
    (HBAR / (2.0 * piezo.density * lattice.aperture * lattice.length() * lattice.speed)).sqrt()
}

fn samples_per_cell(field_len: usize, dx: f64, geom: &ElectrodeGeometry) -> Result<usize> {
    let s = (geom.pitch() / dx).round() as usize;
    if s == 0
        || (s as f64 * dx - geom.pitch()).abs() > 1e-9 * geom.pitch()
        || field_len != 2 * geom.pair_count * s + 1
    {
        return Err(Error::Precondition(format!(
            "field grid ({field_len} samples, dx = {dx:e}) does not tile the transducer"
        )));
    }
    Ok(s)
}

/// ∫₀ᴸ A(x)·p_e(x) dx by the trapezoid rule on the field grid.
pub fn overlap_integral(
    field: &[Complex64],
    dx: f64,
    geom: &ElectrodeGeometry,
) -> Result<Complex64> {
    let s = samples_per_cell(field.len(), dx, geom)?;
    let pol = geom.polarity_grid(s);
    let mut sum = Complex64::new(0.0, 0.0);
    for (k, &p) in pol.iter().enumerate() {
        match p {
            1 => sum += field[k] + field[k + 1],
            -1 => sum -= field[k] + field[k + 1],
            _ => {}
        }
    }
    Ok(sum * (0.5 * dx))
}

/// ½ ∫₀ᴸ |p_e| dx on the snapped grid.
pub fn electrode_half_area(geom: &ElectrodeGeometry, samples_per_cell: usize, dx: f64) -> f64 {
    0.5 * geom
        .polarity_grid(samples_per_cell)
        .iter()
        .filter(|&&p| p != 0)
        .count() as f64
        * dx
}

/// Rotates the field so that ∫A·p_e dx is real and non-negative.
pub fn align_phase(field: &mut [Complex64], dx: f64, geom: &ElectrodeGeometry) -> Result<()> {
    let overlap = overlap_integral(field, dx, geom)?;
    if overlap.norm() > 0.0 {
        let rot = overlap.conj() / overlap.norm();
        field.iter_mut().for_each(|a| *a *= rot);
    }
    Ok(())
}

/// Induced potential amplitude V_ij (V) for longitudinal field A_i and transverse order j.
pub fn overlap_potential(
    field: &[Complex64],
    dx: f64,
    geom: &ElectrodeGeometry,
    j: u32,
    z0: f64,
    piezo: &PiezoConstants,
) -> Result<f64> {
    let s = samples_per_cell(field.len(), dx, geom)?;
    let ms = mean_square(field, dx);
    if (ms - 1.0).abs() > NORMALIZATION_TOL {
        return Err(Error::Precondition(format!(
            "field mean square is {ms}, expected 1"
        )));
    }
    if j == 0 {
        return Err(Error::Domain("transverse order must be positive".into()));
    }
    if j % 2 == 0 {
        return Ok(0.0);
    }
    let overlap = overlap_integral(field, dx, geom)?;
    let transverse = 2.0 * 2f64.sqrt() / (j as f64 * PI);
    Ok(piezo.epz_over_eps * z0 * transverse * overlap.norm() / electrode_half_area(geom, s, dx))
}

/// g = ξ₀·C_IDT·V/ħ in rad/s.
pub fn coupling_strength(xi0: f64, c_idt: f64, potential: f64) -> Result<f64> {
    if !(xi0 >= 0.0 && c_idt >= 0.0 && potential >= 0.0) {
        return Err(Error::Domain(format!(
            "coupling inputs must be non-negative (ξ₀ = {xi0:e}, C = {c_idt:e}, V = {potential:e})"
        )));
    }
    Ok(xi0 * c_idt * potential / HBAR)
}

/// Induced potential and coupling for mode (i, j).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeCoupling {
    pub i: i32,
    pub j: u32,
    /// V_ij (V).
    pub potential: f64,
    /// g_ij (rad/s).
    pub g: f64,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom() -> ElectrodeGeometry {
        ElectrodeGeometry::from_lattice(&LatticeSpec::default()).unwrap()
    }

    #[test]
    fn polarity_at_electrode_centers_and_gaps() {
        let g = geom();
        let p = 0.475e-6;
        assert_eq!(electrode_function(&g, 0.5 * p).unwrap(), 1);
        assert_eq!(
            electrode_function(&g, 0.5 * p + 0.5 * g.electrical_period).unwrap(),
            -1
        );
        assert_eq!(electrode_function(&g, 0.01 * p).unwrap(), 0);
        assert_eq!(electrode_function(&g, 0.99 * p).unwrap(), 0);
        assert!(electrode_function(&g, -1e-9).is_err());
        assert!(electrode_function(&g, g.length() * 1.001).is_err());
    }

    #[test]
    fn electrode_function_integrates_to_zero() {
        let g = geom();
        let n = 280 * 64;
        let dx = g.length() / n as f64;
        let sum: f64 = (0..n)
            .map(|k| electrode_function(&g, (k as f64 + 0.5) * dx).unwrap() as f64 * dx)
            .sum();
        assert!(sum.abs() <= dx);
        let grid: i64 = g.polarity_grid(32).iter().map(|&p| p as i64).sum();
        assert_eq!(grid, 0);
    }

    #[test]
    fn zero_point_displacement_value_and_scaling() {
        let l = LatticeSpec::default();
        let pz = PiezoConstants::default();
        let z0 = zero_point_displacement(&l, &pz);
        assert!((z0 - 6.28e-17).abs() < 0.02e-17, "{z0}");
        let mut l4 = l;
        l4.cells *= 4;
        assert!((zero_point_displacement(&l4, &pz) / z0 - 0.5).abs() < 1e-12);
    }

    #[test]
    fn even_transverse_order_has_no_potential() {
        let g = geom();
        let dx = 0.475e-6 / 32.0;
        let field = alloc::vec![Complex64::new(1.0, 0.0); 280 * 32 + 1];
        assert_eq!(
            overlap_potential(&field, dx, &g, 2, 1e-17, &PiezoConstants::default()).unwrap(),
            0.0
        );
    }

    #[test]
    fn unnormalized_field_rejected() {
        let g = geom();
        let dx = 0.475e-6 / 32.0;
        let field = alloc::vec![Complex64::new(2.0, 0.0); 280 * 32 + 1];
        assert!(matches!(
            overlap_potential(&field, dx, &g, 1, 1e-17, &PiezoConstants::default()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn coupling_is_linear() {
        assert_eq!(coupling_strength(1e-5, 83e-15, 0.0).unwrap(), 0.0);
        let g1 = coupling_strength(1e-5, 83e-15, 1e-7).unwrap();
        let g2 = coupling_strength(1e-5, 166e-15, 1e-7).unwrap();
        assert!((g2 / g1 - 2.0).abs() < 1e-14);
        assert!(coupling_strength(-1.0, 1.0, 1.0).is_err());
    }
}
