// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use super::dips::{detect_peaks, parabolic_vertex, Plateau};
use super::sweep::TransmissionMap;
use crate::fit::{levenberg_marquardt, LeastSquaresOptions};
use crate::{Error, Result};

/// Two-branch hyperbola fitted to the spectral lines near one mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnticrossingFit {
    /// Φ/Φ₀ where the bare atom line crosses f_m.
    pub crossing_flux: f64,
    /// f_m (Hz).
    pub mode_frequency: f64,
    /// g (rad/s).
    pub g: f64,
    /// Norm of the branch residuals (Hz).
    pub residual_norm: f64,
    /// Flux rows that showed two lines.
    pub rows: usize,
}

/// f± = (f_a + f_m)/2 ± sqrt(g² + (f_a − f_m)²/4), all in Hz.
pub fn hyperbola(fa: f64, fm: f64, g_hz: f64) -> (f64, f64) {
    let mid = 0.5 * (fa + fm);
    let half = (g_hz * g_hz + 0.25 * (fa - fm).powi(2)).sqrt();
    (mid - half, mid + half)
}

/// Line positions (Hz) in one flux row: peaks of |r| = |1 − t| inside the window.
pub fn row_lines(map: &TransmissionMap, row: usize, window: (f64, f64)) -> Vec<f64> {
    let cols: Vec<usize> = (0..map.frequency.len())
        .filter(|&c| map.frequency[c] >= window.0 && map.frequency[c] <= window.1)
        .collect();
    if cols.len() < 8 {
        return Vec::new();
    }
    let freqs: Vec<f64> = cols.iter().map(|&c| map.frequency[c]).collect();
    let signal: Vec<f64> = cols
        .iter()
        .map(|&c| (1.0 - map.at(row, c)).norm())
        .collect();
    let neg: Vec<f64> = signal.iter().map(|v| -v).collect();
    let plateau = Plateau::of(&neg);
    detect_peaks(&signal, -plateau.baseline, plateau.threshold())
        .into_iter()
        .map(|k| parabolic_vertex(&freqs, &neg, k))
        .collect()
}

/// Fits the anticrossing of the atom line with the mode inside `window` (Hz).
pub fn extract_anticrossing(map: &TransmissionMap, window: (f64, f64)) -> Result<AnticrossingFit> {
    if !(window.1 > window.0) {
        return Err(Error::invalid(
            "window",
            "frequency window must be increasing",
        ));
    }
    // (f_a, f−, f+, row) for rows with two resolvable lines: the two strongest.
    let mut pairs: Vec<(f64, f64, f64, usize)> = Vec::new();
    for row in 0..map.rows() {
        let lines = strongest_two(map, row, window);
        if let Some((lo, hi)) = lines {
            pairs.push((map.atom_frequency[row], lo, hi, row));
        }
    }
    if pairs.len() < 3 {
        return Err(Error::Fit(format!(
            "only {} flux rows show two lines in [{:.6e}, {:.6e}] Hz; need at least 3",
            pairs.len(),
            window.0,
            window.1
        )));
    }
    let closest = pairs
        .iter()
        .min_by(|a, b| (a.2 - a.1).total_cmp(&(b.2 - b.1)))
        .copied()
        .unwrap();
    let fm0 = 0.5 * (closest.1 + closest.2);
    let g0 = 0.5 * (closest.2 - closest.1);
    let fit = levenberg_marquardt(
        |p, out| {
            for (o, &(fa, lo, hi, _)) in out.chunks_exact_mut(2).zip(&pairs) {
                let (m, pl) = hyperbola(fa, fm0 + p[0], p[1]);
                o[0] = m - lo;
                o[1] = pl - hi;
            }
        },
        &[0.0, g0],
        &[g0, g0],
        2 * pairs.len(),
        &LeastSquaresOptions::default(),
    )?;
    let fm = fm0 + fit.params[0];
    let g_hz = fit.params[1].abs();
    let crossing_flux = crossing_flux(map, fm, closest.3)?;
    Ok(AnticrossingFit {
        crossing_flux,
        mode_frequency: fm,
        g: 2.0 * PI * g_hz,
        residual_norm: fit.residual_norm,
        rows: pairs.len(),
    })
}

fn strongest_two(map: &TransmissionMap, row: usize, window: (f64, f64)) -> Option<(f64, f64)> {
    let lines = row_lines(map, row, window);
    if lines.len() < 2 {
        return None;
    }
    let strength = |f: f64| {
        let c = map
            .frequency
            .partition_point(|&x| x < f)
            .min(map.frequency.len() - 1);
        (1.0 - map.at(row, c)).norm()
    };
    let mut ranked = lines;
    ranked.sort_by(|a, b| strength(*b).total_cmp(&strength(*a)));
    let (a, b) = (ranked[0], ranked[1]);
    Some((a.min(b), a.max(b)))
}

/// Flux where the bare atom line meets `fm`, nearest to row `near`.
fn crossing_flux(map: &TransmissionMap, fm: f64, near: usize) -> Result<f64> {
    let fa = &map.atom_frequency;
    let mut best: Option<(f64, f64)> = None;
    for r in 0..fa.len() - 1 {
        let (d0, d1) = (fa[r] - fm, fa[r + 1] - fm);
        if d0 == 0.0 || d0.signum() != d1.signum() {
            let t = if d0 == d1 { 0.0 } else { d0 / (d0 - d1) };
            let phi = map.flux[r] + t * (map.flux[r + 1] - map.flux[r]);
            let dist = (r as f64 + t - near as f64).abs();
            if best.is_none_or(|(_, bd)| dist < bd) {
                best = Some((phi, dist));
            }
        }
    }
    best.map(|(phi, _)| phi).ok_or_else(|| {
        Error::Fit(format!(
            "the atom line never crosses {fm:.6e} Hz inside the flux range"
        ))
    })
}
