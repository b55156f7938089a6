// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Device assembly, flux/frequency sweeps and the fits that read rates,
//! couplings and quality factors back out of spectra.

mod anticrossing;
mod device;
mod dips;
mod sweep;

pub use anticrossing::{extract_anticrossing, hyperbola, row_lines, AnticrossingFit};
pub use device::{assemble_device, CoupledMode, DeviceAssembly, DeviceSpec, SELECTION_FLOOR};
pub use dips::{
    fit_lorentzian, fit_q_from_dip, fit_transmission, rates_from_fit, DipQuality, LorentzianFit,
    Plateau, TransmissionFit, DETECTION_SIGMA, MIN_STEPS_PER_HWHM,
};
pub use sweep::{
    linspace, simulate_map, simulate_row, simulate_trace, Solver, SweepSpec, TransmissionMap,
};
