// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Forward model of a flux-tunable transmon whose shunt capacitor is an
//! interdigital transducer sitting on a surface-acoustic-wave phononic crystal.
//!
//! The crate is `no_std` (with `alloc`) and covers the numerical core:
//!
//! * [`lattice`]: Bloch dispersion, stop band and confined transverse modes of
//!   the periodic stripe array.
//! * [`qnm`]: quasinormal modes of the finite, open array (complex frequencies,
//!   quality factors, longitudinal field profiles).
//! * [`transmon`]: flux-tuned transition frequency and charge matrix element.
//! * [`coupling`]: piezoelectric potential induced in the transducer by each
//!   mode and the resulting atom–phonon coupling rate.
//! * [`dynamics`]: weak-drive linear response and Lindblad steady state of the
//!   driven atom coupled to many lossy modes; reflection and transmission.
//! * [`spectroscopy`]: device assembly, flux/frequency sweeps and the fits
//!   used to read rates, couplings and Q factors back out of spectra.
//!
//! IO, configuration files, parallel sweeps and the command line live in the
//! companion `sawqa` crate.

#![no_std]

extern crate alloc;

pub mod consts;
pub mod coupling;
pub mod dynamics;
mod error;
pub mod fit;
pub mod lattice;
pub mod linalg;
pub mod qnm;
pub mod roots;
pub mod spectroscopy;
pub mod transmon;

pub use error::{Error, Result};
pub use num_complex::Complex64;
