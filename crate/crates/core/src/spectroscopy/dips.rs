// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::fit::{levenberg_marquardt, LeastSquaresOptions};
use crate::{Error, Result};

/// Detection threshold in units of the plateau noise.
pub const DETECTION_SIGMA: f64 = 5.0;
/// Dips narrower than this many grid steps (HWHM) are unresolved.
pub const MIN_STEPS_PER_HWHM: f64 = 2.0;

/// y(f) = baseline − depth / (1 + ((f − center)/half_width)²).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LorentzianFit {
    /// Hz.
    pub center: f64,
    /// HWHM (Hz).
    pub half_width: f64,
    pub depth: f64,
    pub baseline: f64,
    pub residual_norm: f64,
}

impl LorentzianFit {
    pub fn eval(&self, f: f64) -> f64 {
        lorentz(f, self.center, self.half_width, self.depth) + self.baseline
    }
}

fn lorentz(f: f64, center: f64, hwhm: f64, depth: f64) -> f64 {
    let x = (f - center) / hwhm;
    -depth / (1.0 + x * x)
}

/// Plateau level and noise. The level is the median of the upper quartile of
/// the trace values. The noise is the larger of the spread in that quartile
/// and a robust white-noise estimate from second differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Plateau {
    pub baseline: f64,
    pub rms: f64,
}

impl Plateau {
    pub fn of(values: &[f64]) -> Self {
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let upper = &sorted[(3 * sorted.len()) / 4..];
        let baseline = upper[upper.len() / 2];
        let spread =
            (upper.iter().map(|v| (v - baseline).powi(2)).sum::<f64>() / upper.len() as f64).sqrt();
        Plateau {
            baseline,
            rms: spread.max(second_difference_noise(values)),
        }
    }

    pub fn threshold(&self) -> f64 {
        (DETECTION_SIGMA * self.rms)
            .max(1e-9 * self.baseline.abs())
            .max(1e-12)
    }
}

// sigma from the median |y[k-1] - 2y[k] + y[k+1]|, which has variance 6 sigma^2
// for white noise and ignores a smooth dip occupying a minority of samples.
fn second_difference_noise(values: &[f64]) -> f64 {
    if values.len() < 3 {
        return 0.0;
    }
    let mut d: Vec<f64> = values
        .windows(3)
        .map(|w| (w[0] - 2.0 * w[1] + w[2]).abs())
        .collect();
    d.sort_by(f64::total_cmp);
    d[d.len() / 2] / (0.674_489_75 * 6f64.sqrt())
}

fn check_trace(freqs: &[f64], values: &[f64]) -> Result<()> {
    if freqs.len() != values.len() {
        return Err(Error::Precondition(format!(
            "{} frequencies for {} values",
            freqs.len(),
            values.len()
        )));
    }
    if freqs.len() < 8 {
        return Err(Error::Fit("trace too short to fit".into()));
    }
    if freqs.windows(2).any(|w| !(w[1] > w[0])) || values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition(
            "trace must be finite on a strictly increasing grid".into(),
        ));
    }
    Ok(())
}

/// Vertex of the parabola through three neighbouring samples.
pub(crate) fn parabolic_vertex(freqs: &[f64], values: &[f64], k: usize) -> f64 {
    if k == 0 || k + 1 >= freqs.len() {
        return freqs[k];
    }
    let (x0, x1, x2) = (freqs[k - 1], freqs[k], freqs[k + 1]);
    let (y0, y1, y2) = (values[k - 1], values[k], values[k + 1]);
    let d0 = (y1 - y0) / (x1 - x0);
    let d1 = (y2 - y1) / (x2 - x1);
    let curv = (d1 - d0) / (x2 - x0);
    if curv == 0.0 {
        return x1;
    }
    let v = 0.5 * (x0 + x1) - d0 / (2.0 * curv);
    v.clamp(x0, x2)
}

/// Initial guess for one dip at sample `k`: (center, hwhm, depth).
fn initial_dip(freqs: &[f64], values: &[f64], k: usize, baseline: f64) -> (f64, f64, f64) {
    let depth = baseline - values[k];
    let half = baseline - 0.5 * depth;
    let crossing = |range: &mut dyn Iterator<Item = usize>, step: isize| -> Option<f64> {
        for i in range {
            if values[i] >= half {
                let j = (i as isize - step) as usize;
                let t = (half - values[j]) / (values[i] - values[j]);
                return Some(freqs[j] + t * (freqs[i] - freqs[j]));
            }
        }
        None
    };
    let left = crossing(&mut (0..k).rev(), -1);
    let right = crossing(&mut (k + 1..freqs.len()), 1);
    let center = freqs[k];
    let hwhm = match (left, right) {
        (Some(l), Some(r)) => 0.5 * (r - l),
        (Some(l), None) => center - l,
        (None, Some(r)) => r - center,
        (None, None) => 0.25 * (freqs[freqs.len() - 1] - freqs[0]),
    };
    (center, hwhm, depth)
}

fn local_step(freqs: &[f64], k: usize) -> f64 {
    let lo = k.saturating_sub(1);
    let hi = (k + 1).min(freqs.len() - 1);
    (freqs[hi] - freqs[lo]) / (hi - lo) as f64
}

/// Least-squares fit of a single Lorentzian dip on a constant baseline.
/// Initialization is deterministic: trace minimum and its half-depth crossings.
pub fn fit_lorentzian(freqs: &[f64], values: &[f64]) -> Result<LorentzianFit> {
    check_trace(freqs, values)?;
    let plateau = Plateau::of(values);
    let k = (0..values.len())
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(0);
    if plateau.baseline - values[k] < plateau.threshold() {
        return Err(Error::Fit(format!(
            "no dip: depth {:.3e} below detection threshold {:.3e}",
            plateau.baseline - values[k],
            plateau.threshold()
        )));
    }
    let (c0, h0, d0) = initial_dip(freqs, values, k, plateau.baseline);
    let step = local_step(freqs, k);
    if h0 < MIN_STEPS_PER_HWHM * step {
        return Err(Error::Resolution(format!(
            "dip at {c0:.6e} Hz is narrower than the grid ({h0:.3e} Hz HWHM)"
        )));
    }
    let fit = levenberg_marquardt(
        |p, out| {
            for (o, (&f, &y)) in out.iter_mut().zip(freqs.iter().zip(values)) {
                *o = lorentz(f, c0 + p[0], p[1], p[2]) + p[3] - y;
            }
        },
        &[0.0, h0, d0, plateau.baseline],
        &[h0, h0, d0, plateau.baseline.abs().max(d0)],
        values.len(),
        &LeastSquaresOptions::default(),
    )?;
    let p = &fit.params;
    let out = LorentzianFit {
        center: c0 + p[0],
        half_width: p[1].abs(),
        depth: p[2],
        baseline: p[3],
        residual_norm: fit.residual_norm,
    };
    if !(out.depth > 0.0 && out.depth <= 1.0) {
        return Err(Error::Fit(format!(
            "fitted depth {:.4} outside (0, 1]",
            out.depth
        )));
    }
    if out.half_width < MIN_STEPS_PER_HWHM * step {
        return Err(Error::Resolution(format!(
            "fitted HWHM {:.3e} Hz is below the grid resolution",
            out.half_width
        )));
    }
    Ok(out)
}

/// Lorentzian fit of a transmission dip with the weak-drive rate identities.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmissionFit {
    pub lorentzian: LorentzianFit,
    /// Γ1 (rad/s).
    pub gamma1: f64,
    /// Γ2 (rad/s).
    pub gamma2: f64,
}

/// Γ2 = 2π·HWHM and Γ1 = 2Γ2·depth.
pub fn rates_from_fit(fit: &LorentzianFit) -> (f64, f64) {
    let gamma2 = 2.0 * PI * fit.half_width;
    (2.0 * gamma2 * fit.depth, gamma2)
}

/// Fits Re t, which is exactly Lorentzian for a bare weakly driven atom;
/// |t| is not.
pub fn fit_transmission(freqs: &[f64], t: &[Complex64]) -> Result<TransmissionFit> {
    let re: Vec<f64> = t.iter().map(|z| z.re).collect();
    let lorentzian = fit_lorentzian(freqs, &re)?;
    let (gamma1, gamma2) = rates_from_fit(&lorentzian);
    Ok(TransmissionFit {
        lorentzian,
        gamma1,
        gamma2,
    })
}

/// One resonance read off a reflection scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DipQuality {
    pub fit: LorentzianFit,
    /// f₀/(2·HWHM).
    pub quality: f64,
}

/// Peaks of `values` rising at least `threshold` above `floor`.
pub(crate) fn detect_peaks(values: &[f64], floor: f64, threshold: f64) -> Vec<usize> {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    detect_dips(&neg, -floor, threshold)
}

/// Detected dips as sample indices, merged so neighbouring minima are
/// separated by a rise of at least `threshold`.
pub(crate) fn detect_dips(values: &[f64], baseline: f64, threshold: f64) -> Vec<usize> {
    let n = values.len();
    let mut minima: Vec<usize> = (0..n)
        .filter(|&k| {
            let left = k == 0 || values[k] < values[k - 1];
            let right = k + 1 == n || values[k] <= values[k + 1];
            left && right && baseline - values[k] >= threshold
        })
        .collect();
    loop {
        let mut merged = false;
        let mut out: Vec<usize> = Vec::with_capacity(minima.len());
        for &k in &minima {
            if let Some(&prev) = out.last() {
                let top = values[prev..=k]
                    .iter()
                    .copied()
                    .fold(f64::NEG_INFINITY, f64::max);
                if top - values[prev].max(values[k]) < threshold {
                    if values[k] < values[prev] {
                        *out.last_mut().unwrap() = k;
                    }
                    merged = true;
                    continue;
                }
            }
            out.push(k);
        }
        minima = out;
        if !merged {
            return minima;
        }
    }
}

/// Per-dip quality factors from a scan with isolated dips, fitted jointly on
/// a shared baseline.
pub fn fit_q_from_dip(freqs: &[f64], values: &[f64]) -> Result<Vec<DipQuality>> {
    check_trace(freqs, values)?;
    let plateau = Plateau::of(values);
    let threshold = plateau.threshold();
    let dips = detect_dips(values, plateau.baseline, threshold);
    if dips.is_empty() {
        return Err(Error::Fit("no dip above the detection threshold".into()));
    }
    let candidates = || dips.iter().map(|&k| freqs[k]).collect::<Vec<_>>();
    for pair in dips.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let shallower = (plateau.baseline - values[a]).min(plateau.baseline - values[b]);
        let top = values[a..=b]
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max);
        if top < plateau.baseline - 0.5 * shallower {
            return Err(Error::Ambiguous {
                candidates: candidates(),
            });
        }
    }
    let mut start = vec![plateau.baseline];
    let mut typical = vec![plateau.baseline.abs().max(threshold)];
    let mut centers = Vec::with_capacity(dips.len());
    for &k in &dips {
        let (c, h, d) = initial_dip(freqs, values, k, plateau.baseline);
        if h < MIN_STEPS_PER_HWHM * local_step(freqs, k) {
            return Err(Error::Resolution(format!(
                "dip at {c:.6e} Hz is narrower than the grid ({h:.3e} Hz HWHM)"
            )));
        }
        centers.push(c);
        start.extend_from_slice(&[0.0, h, d]);
        typical.extend_from_slice(&[h, h, d]);
    }
    let fit = levenberg_marquardt(
        |p, out| {
            for (o, (&f, &y)) in out.iter_mut().zip(freqs.iter().zip(values)) {
                let mut m = p[0];
                for (q, c) in p[1..].chunks_exact(3).zip(&centers) {
                    m += lorentz(f, c + q[0], q[1], q[2]);
                }
                *o = m - y;
            }
        },
        &start,
        &typical,
        values.len(),
        &LeastSquaresOptions::default(),
    )?;
    let baseline = fit.params[0];
    // A hidden neighbour shows up as structure the isolated-dip model cannot absorb.
    let deepest = dips
        .iter()
        .map(|&k| plateau.baseline - values[k])
        .fold(0.0, f64::max);
    let worst = freqs
        .iter()
        .zip(values)
        .map(|(&f, &y)| {
            let mut m = baseline;
            for (q, c) in fit.params[1..].chunks_exact(3).zip(&centers) {
                m += lorentz(f, c + q[0], q[1], q[2]);
            }
            (m - y).abs()
        })
        .fold(0.0, f64::max);
    if worst > threshold.max(0.02 * deepest) {
        let mut found: Vec<f64> = fit.params[1..]
            .chunks_exact(3)
            .zip(&centers)
            .map(|(q, c)| c + q[0])
            .collect();
        found.sort_by(f64::total_cmp);
        return Err(Error::Ambiguous { candidates: found });
    }
    let mut out = Vec::with_capacity(dips.len());
    for ((q, c), &k) in fit.params[1..].chunks_exact(3).zip(&centers).zip(&dips) {
        let lf = LorentzianFit {
            center: c + q[0],
            half_width: q[1].abs(),
            depth: q[2],
            baseline,
            residual_norm: fit.residual_norm,
        };
        if !(lf.depth > 0.0) {
            return Err(Error::Fit(format!(
                "dip near {c:.6e} Hz fitted with non-positive depth"
            )));
        }
        if lf.half_width < MIN_STEPS_PER_HWHM * local_step(freqs, k) {
            return Err(Error::Resolution(format!(
                "fitted HWHM {:.3e} Hz is below the grid resolution",
                lf.half_width
            )));
        }
        out.push(DipQuality {
            quality: lf.center / (2.0 * lf.half_width),
            fit: lf,
        });
    }
    for pair in out.windows(2) {
        if pair[1].fit.center - pair[0].fit.center < pair[0].fit.half_width + pair[1].fit.half_width
        {
            return Err(Error::Ambiguous {
                candidates: out.iter().map(|d| d.fit.center).collect(),
            });
        }
    }
    Ok(out)
}
