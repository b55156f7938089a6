// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! SI-exact physical constants.

use core::f64::consts::PI;

/// Planck constant, J·s.
pub const PLANCK: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = PLANCK / (2.0 * PI);
/// Elementary charge, C.
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

pub const TAU: f64 = 2.0 * PI;
