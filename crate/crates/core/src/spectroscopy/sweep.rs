// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;

use num_complex::Complex64;

use super::device::DeviceAssembly;
use crate::dynamics::{lindblad_steady_state_with, semiclassical_response, LindbladOptions};
use crate::transmon::{qubit_frequency, FluxBias};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Solver {
    Semiclassical,
    Lindblad {
        n_max: usize,
        options: LindbladOptions,
    },
}

impl Solver {
    pub fn name(&self) -> &'static str {
        match self {
            Solver::Semiclassical => "semiclassical",
            Solver::Lindblad { .. } => "lindblad",
        }
    }
}

fn check_grid(name: &'static str, grid: &[f64]) -> Result<()> {
    if grid.len() < 2 {
        return Err(Error::invalid(name, "grid needs at least two points"));
    }
    if grid.iter().any(|v| !v.is_finite()) || grid.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::invalid(
            name,
            "grid must be finite and strictly increasing",
        ));
    }
    Ok(())
}

/// Flux grid (Φ/Φ₀), frequency grid (Hz) and probe Rabi frequency (rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub flux: Vec<f64>,
    pub frequency: Vec<f64>,
    pub rabi: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        check_grid("flux", &self.flux)?;
        check_grid("frequency", &self.frequency)?;
        if !(self.rabi > 0.0 && self.rabi.is_finite()) {
            return Err(Error::invalid("rabi", "drive amplitude must be positive"));
        }
        Ok(())
    }
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
pub fn linspace(start: f64, stop: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => alloc::vec![start],
        _ => (0..n)
            .map(|k| start + (stop - start) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// Transmission t(f) at fixed flux.
pub fn simulate_trace(
    device: &DeviceAssembly,
    bias: FluxBias,
    frequencies: &[f64],
    rabi: f64,
    solver: &Solver,
) -> Result<Vec<Complex64>> {
    check_grid("frequency", frequencies)?;
    frequencies
        .iter()
        .map(|&f| {
            let model = device.system_model(bias, f, rabi)?;
            let state = match solver {
                Solver::Semiclassical => semiclassical_response(&model),
                Solver::Lindblad { n_max, options } => {
                    lindblad_steady_state_with(&model, *n_max, options)
                }
            };
            state.map(|s| s.t)
        })
        .enumerate()
        .map(|(k, r)| {
            r.map_err(|e| e.context(format!("f = {:.6e} Hz (point {k})", frequencies[k])))
        })
        .collect()
}

/// Row-major transmission map: one row per flux point.
#[derive(Debug, Clone, PartialEq)]
pub struct TransmissionMap {
    pub flux: Vec<f64>,
    pub frequency: Vec<f64>,
    /// Bare atom frequency (Hz) at each flux point.
    pub atom_frequency: Vec<f64>,
    pub t: Vec<Complex64>,
}

impl TransmissionMap {
    /// Assembles a map from per-flux rows, in flux order.
    pub fn from_rows(
        sweep: &SweepSpec,
        device: &DeviceAssembly,
        rows: Vec<Vec<Complex64>>,
    ) -> Result<Self> {
        if rows.len() != sweep.flux.len() || rows.iter().any(|r| r.len() != sweep.frequency.len()) {
            return Err(Error::Precondition(
                "map rows do not match the sweep grids".into(),
            ));
        }
        let atom_frequency = sweep
            .flux
            .iter()
            .map(|&p| qubit_frequency(&device.spec.transmon, FluxBias::new(p)))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransmissionMap {
            flux: sweep.flux.clone(),
            frequency: sweep.frequency.clone(),
            atom_frequency,
            t: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.flux.len()
    }

    pub fn row(&self, r: usize) -> &[Complex64] {
        let n = self.frequency.len();
        &self.t[r * n..(r + 1) * n]
    }

    pub fn at(&self, r: usize, c: usize) -> Complex64 {
        self.t[r * self.frequency.len() + c]
    }
}

/// One flux row of a map; the unit of parallel work.
pub fn simulate_row(
    device: &DeviceAssembly,
    sweep: &SweepSpec,
    row: usize,
    solver: &Solver,
) -> Result<Vec<Complex64>> {
    let phi = sweep.flux[row];
    simulate_trace(
        device,
        FluxBias::new(phi),
        &sweep.frequency,
        sweep.rabi,
        solver,
    )
    .map_err(|e| e.context(format!("flux row {row} (φ = {phi})")))
}

/// Sequential map over the sweep.
pub fn simulate_map(
    device: &DeviceAssembly,
    sweep: &SweepSpec,
    solver: &Solver,
) -> Result<TransmissionMap> {
    sweep.validate()?;
    let rows = (0..sweep.flux.len())
        .map(|r| simulate_row(device, sweep, r, solver))
        .collect::<Result<Vec<_>>>()?;
    TransmissionMap::from_rows(sweep, device, rows)
}
