// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::coupling::{
    align_phase, coupling_strength, overlap_potential, zero_point_displacement, ElectrodeGeometry,
    ModeCoupling, PiezoConstants,
};
use crate::dynamics::{ModeParams, SystemModel};
use crate::lattice::{transverse_modes, LatticeSpec};
use crate::qnm::{find_qnms, mode_frequency_2d, QuasiNormalMode};
use crate::transmon::{
    flux_for_frequency, matrix_element_xi0, qubit_frequency, FluxBias, TransmonSpec,
};
use crate::{Error, Result};

/// Couplings below this fraction of the strongest one are treated as
/// forbidden by the parity selection rules.
pub const SELECTION_FLOOR: f64 = 1e-8;

/// Everything needed to build a device: the physical inputs and the
/// frequency window (Hz) in which modes are resolved.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviceSpec {
    pub lattice: LatticeSpec,
    pub transmon: TransmonSpec,
    pub piezo: PiezoConstants,
    pub window: (f64, f64),
}

impl Default for DeviceSpec {
    fn default() -> Self {
        DeviceSpec {
            lattice: LatticeSpec::default(),
            transmon: TransmonSpec::default(),
            piezo: PiezoConstants::default(),
            window: (3.20e9, 3.35e9),
        }
    }
}

/// A resolved (i, j) mode with its coupling to the atom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoupledMode {
    pub i: i32,
    pub j: u32,
    /// f_ij (Hz).
    pub frequency: f64,
    pub quality: f64,
    pub kx: f64,
    /// V_ij (V).
    pub potential: f64,
    /// g_ij (rad/s).
    pub g: f64,
    /// Flux at which ξ₀ was evaluated: where the bare atom meets the mode, or
    /// the sweet spot if the mode lies above the tuning range.
    pub bias: FluxBias,
}

impl CoupledMode {
    pub fn coupling(&self) -> ModeCoupling {
        ModeCoupling {
            i: self.i,
            j: self.j,
            potential: self.potential,
            g: self.g,
        }
    }

    pub fn params(&self) -> ModeParams {
        ModeParams::from_quality(2.0 * PI * self.frequency, self.quality, self.g)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviceAssembly {
    pub spec: DeviceSpec,
    /// Longitudinal quasinormal modes feeding the (i, j) list.
    pub qnms: Vec<QuasiNormalMode>,
    /// All confined (i, j) modes inside the window, sorted by frequency.
    pub modes: Vec<CoupledMode>,
}

impl DeviceAssembly {
    /// A device defined directly by its mode list (no lattice solve).
    pub fn from_modes(transmon: TransmonSpec, mut modes: Vec<CoupledMode>) -> Result<Self> {
        transmon.validate()?;
        for m in &modes {
            if !(m.frequency > 0.0 && m.quality > 0.0 && m.g >= 0.0) {
                return Err(Error::invalid(
                    "modes",
                    format!("mode ({}, {}) has invalid parameters", m.i, m.j),
                ));
            }
        }
        modes.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
        let lo = modes.first().map_or(0.0, |m| m.frequency);
        let hi = modes.last().map_or(0.0, |m| m.frequency);
        Ok(DeviceAssembly {
            spec: DeviceSpec {
                transmon,
                window: (lo, hi),
                ..DeviceSpec::default()
            },
            qnms: Vec::new(),
            modes,
        })
    }

    /// Modes that survive the selection rules.
    pub fn coupled(&self) -> impl Iterator<Item = &CoupledMode> + '_ {
        let gmax = self.modes.iter().map(|m| m.g).fold(0.0, f64::max);
        self.modes
            .iter()
            .filter(move |m| gmax > 0.0 && m.g > SELECTION_FLOOR * gmax)
    }

    pub fn find(&self, i: i32, j: u32) -> Option<&CoupledMode> {
        self.modes.iter().find(|m| m.i == i && m.j == j)
    }

    /// Steady-state model with the atom biased at `bias` and probed at `f` (Hz).
    pub fn system_model(&self, bias: FluxBias, f: f64, rabi: f64) -> Result<SystemModel> {
        let t = &self.spec.transmon;
        let fa = qubit_frequency(t, bias)?;
        Ok(SystemModel {
            atom_omega: 2.0 * PI * fa,
            gamma1: t.gamma1,
            gamma_phi: t.gamma_phi(),
            modes: self.coupled().map(CoupledMode::params).collect(),
            drive_omega: 2.0 * PI * f,
            rabi,
        })
    }
}

/// QNMs → transverse orders → f_ij → V_ij → g_ij for every confined mode in the window.
pub fn assemble_device(spec: &DeviceSpec) -> Result<DeviceAssembly> {
    let (lo, hi) = spec.window;
    if !(lo > 0.0 && hi > lo) {
        return Err(Error::invalid(
            "window",
            "frequency window must be positive and increasing",
        ));
    }
    let l = &spec.lattice;
    l.validate().map_err(|e| e.context("lattice"))?;
    spec.transmon
        .validate()
        .map_err(|e| e.context("transmon"))?;
    spec.piezo.validate().map_err(|e| e.context("piezo"))?;
    let transverse = transverse_modes(l).map_err(|e| e.context("transverse modes"))?;
    let Some(j_max) = transverse.last() else {
        return Ok(DeviceAssembly {
            spec: *spec,
            qnms: Vec::new(),
            modes: Vec::new(),
        });
    };
    // f_ij ≥ f_i, so the longitudinal search starts low enough for the highest j.
    let kx_min = 2.0 * PI * lo / l.speed;
    let search_lo = lo / (1.0 + (j_max.ky / kx_min).powi(2)).sqrt();
    let mut qnms = find_qnms(l, (search_lo, hi)).map_err(|e| e.context("quasinormal modes"))?;
    let geom = ElectrodeGeometry::from_lattice(l).map_err(|e| e.context("electrode geometry"))?;
    let z0 = zero_point_displacement(l, &spec.piezo);
    let mut modes = Vec::new();
    for q in qnms.iter_mut() {
        align_phase(&mut q.field, q.dx, &geom)
            .map_err(|e| e.context(format!("mode {}", q.index)))?;
        for t in &transverse {
            let f = mode_frequency_2d(q, t);
            if f < lo || f > hi {
                continue;
            }
            let v = overlap_potential(&q.field, q.dx, &geom, t.j, z0, &spec.piezo)
                .map_err(|e| e.context(format!("potential of mode ({}, {})", q.index, t.j)))?;
            let bias = flux_for_frequency(&spec.transmon, f).unwrap_or(FluxBias::new(0.0));
            let xi0 = matrix_element_xi0(&spec.transmon, bias);
            let g = coupling_strength(xi0, spec.transmon.c_q, v)
                .map_err(|e| e.context(format!("coupling of mode ({}, {})", q.index, t.j)))?;
            modes.push(CoupledMode {
                i: q.index,
                j: t.j,
                frequency: f,
                quality: q.quality,
                kx: q.kx,
                potential: v,
                g,
                bias,
            });
        }
    }
    modes.sort_by(|a, b| a.frequency.total_cmp(&b.frequency));
    Ok(DeviceAssembly {
        spec: *spec,
        qnms,
        modes,
    })
}
