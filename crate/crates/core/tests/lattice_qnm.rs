// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use sawqa_core::lattice::{
    band_gap, dispersion, half_trace, transverse_modes, unit_cell_matrix, BranchLabel, LatticeSpec,
};
use sawqa_core::qnm::{find_qnms, ladder_kx, mode_frequency_2d, quality_factor, QuasiNormalMode};
use sawqa_core::Complex64;

const WINDOW: (f64, f64) = (3.15e9, 3.40e9);

fn reference() -> LatticeSpec {
    LatticeSpec::default()
}

fn mode(modes: &[QuasiNormalMode], i: i32) -> &QuasiNormalMode {
    modes
        .iter()
        .find(|m| m.index == i)
        .unwrap_or_else(|| panic!("mode {i} missing"))
}

/// Stop band edges from a 10 kHz scan of |½ Tr M| around the Bragg frequency.
fn scanned_gap(l: &LatticeSpec) -> (f64, f64) {
    let fb = l.bragg_frequency();
    let step = 1e4;
    let n = (0.1 * fb / step) as usize;
    let inside: Vec<f64> = (0..=2 * n)
        .map(|k| fb - n as f64 * step + k as f64 * step)
        .filter(|&f| half_trace(l, f).abs() > 1.0)
        .collect();
    (inside[0], inside[inside.len() - 1])
}

#[test]
fn band_gap_matches_trace_scan() {
    let l = reference();
    let (lo, hi) = band_gap(&l).unwrap();
    let (slo, shi) = scanned_gap(&l);
    assert!(
        (lo - slo).abs() <= 1e4 && (hi - shi).abs() <= 1e4,
        "{lo} {hi} vs scan {slo} {shi}"
    );
    assert!(lo < 3.27e9 && 3.27e9 < hi);
    for f in [lo + 1e5, 0.5 * (lo + hi), hi - 1e5] {
        assert!(half_trace(&l, f).abs() > 1.0);
    }
}

#[test]
fn gap_width_follows_first_order_perturbation() {
    // Δf ≈ (2/π)·f_B·|sin(π m)|·Δn/n̄ for a two-layer cell with small index contrast.
    let l = reference();
    let (lo, hi) = band_gap(&l).unwrap();
    let dn = l.index_metal() - l.index_free();
    let nbar = l.effective_index();
    let fb = l.speed / (2.0 * l.period * nbar);
    let expect = 2.0 / PI * fb * (PI * l.metallization).sin().abs() * dn / nbar;
    assert!(
        ((hi - lo) / expect - 1.0).abs() < 0.05,
        "width {} vs {}",
        hi - lo,
        expect
    );
}

#[test]
fn doubling_contrast_doubles_gap() {
    let l = reference();
    let mut l2 = l;
    l2.speed_reduction *= 2.0;
    let (a, b) = band_gap(&l).unwrap();
    let (c, d) = band_gap(&l2).unwrap();
    let ratio = (d - c) / (b - a);
    assert!((ratio - 2.0).abs() < 0.5, "ratio {ratio}");
}

#[test]
fn cell_matrix_is_unimodular() {
    let l = reference();
    for (re, im) in [(1e9, 0.0), (3.27e9, -2e6), (3.3e9, 5e7), (6.1e9, -3e8)] {
        let m = unit_cell_matrix(&l, Complex64::new(2.0 * PI * re, 2.0 * PI * im)).unwrap();
        assert!((m.det() - 1.0).norm() < 1e-10);
    }
}

#[test]
fn dispersion_branches_bracket_the_gap() {
    let l = reference();
    let kp = l.zone_edge();
    let grid: Vec<f64> = (1..=40)
        .map(|k| kp * (0.6 + 0.4 * k as f64 / 40.0))
        .collect();
    let [ac, op] = dispersion(&l, &grid).unwrap();
    assert_eq!(ac.label, BranchLabel::Acoustic);
    assert_eq!(op.label, BranchLabel::Optical);
    assert!(ac.samples.windows(2).all(|w| w[1].1 >= w[0].1));
    assert!(op.samples.windows(2).all(|w| w[1].1 <= w[0].1));
    let (lo, hi) = band_gap(&l).unwrap();
    let edge_ac = ac.samples.last().unwrap().1;
    let edge_op = op.samples.last().unwrap().1;
    assert!(edge_ac < edge_op);
    assert!((edge_ac - lo).abs() < 1e3 && (edge_op - hi).abs() < 1e3);
    for &(k, f) in ac.samples.iter().chain(&op.samples) {
        assert!(k > 0.0 && k <= kp);
        assert!(((k * l.period).cos() - half_trace(&l, f)).abs() < 1e-9);
    }
}

#[test]
fn dispersion_reaches_the_zone_edge() {
    let l = reference();
    let kp = l.zone_edge();
    let (lo, hi) = band_gap(&l).unwrap();
    for points in [1, 10, 400, 1000] {
        let grid: Vec<f64> = (1..=points)
            .map(|n| kp * n as f64 / points as f64)
            .collect();
        let [ac, op] = dispersion(&l, &grid).unwrap();
        let edge = (ac.samples.last().unwrap().1, op.samples.last().unwrap().1);
        assert!(
            (edge.0 - lo).abs() < 1e3 && (edge.1 - hi).abs() < 1e3,
            "{points}"
        );
    }
}

#[test]
fn contrast_free_dispersion_is_linear() {
    let mut l = reference();
    l.speed_reduction = 0.0;
    let kp = l.zone_edge();
    let grid: Vec<f64> = (1..=20).map(|k| kp * k as f64 / 20.0).collect();
    let [ac, _] = dispersion(&l, &grid).unwrap();
    for &(k, f) in &ac.samples {
        assert!((f - l.speed * k / (2.0 * PI)).abs() < 1e-6 * f);
    }
}

#[test]
fn reference_lattice_modes_near_measured_frequencies() {
    let l = reference();
    let modes = find_qnms(&l, WINDOW).unwrap();
    let t1 = transverse_modes(&l).unwrap()[0];
    let f: Vec<f64> = modes.iter().map(|m| mode_frequency_2d(m, &t1)).collect();
    for target in [3.244e9, 3.262e9, 3.313e9] {
        assert!(
            f.iter().any(|x| (x - target).abs() < 10e6),
            "no j=1 mode within 10 MHz of {target}"
        );
    }
}

#[test]
fn mode_invariants_hold_for_every_root() {
    let l = reference();
    let modes = find_qnms(&l, WINDOW).unwrap();
    assert!(modes.len() >= 16, "{} modes", modes.len());
    let kp = l.zone_edge();
    for m in &modes {
        assert!(m.omega.im < 0.0);
        assert!((m.mean_square() - 1.0).abs() < 1e-6);
        assert!(m.kx != kp && m.kx == ladder_kx(&l, m.index));
        let qe = quality_factor(m, &l).unwrap();
        assert!(
            (qe / m.quality - 1.0).abs() < 0.05,
            "mode {}: {qe} vs {}",
            m.index,
            m.quality
        );
    }
    for w in modes.windows(2) {
        assert!(w[1].omega.re > w[0].omega.re);
    }
}

#[test]
fn quality_peaks_at_the_gap_and_falls_away() {
    let l = reference();
    let modes = find_qnms(&l, WINDOW).unwrap();
    let q = |i| mode(&modes, i).quality;
    for i in [0, 1] {
        assert!((q(i) / 1500.0 - 1.0).abs() < 0.3, "Q_{i} = {}", q(i));
    }
    for side in [[0, -1, -2, -3, -4, -5], [1, 2, 3, 4, 5, 6]] {
        assert!(side.windows(2).all(|w| q(w[1]) < q(w[0])), "{side:?}");
    }
}

#[test]
fn gap_partner_modes_are_symmetric() {
    // Partners (i, 1−i) sit at mirror images of the zone-edge ladder.
    let l = reference();
    let (lo, hi) = band_gap(&l).unwrap();
    let center = 0.5 * (lo + hi);
    let modes = find_qnms(&l, WINDOW).unwrap();
    let spacing = mode(&modes, -1).frequency() - mode(&modes, -2).frequency();
    for i in [0, -1, -2] {
        let below = center - mode(&modes, i).frequency();
        let above = mode(&modes, 1 - i).frequency() - center;
        assert!(
            (below - above).abs() < 0.1 * spacing,
            "pair ({i}, {}): {below} vs {above}",
            1 - i
        );
    }
}

#[test]
fn quality_grows_with_cell_count() {
    let mut last = 0.0;
    for cells in [70, 140, 280, 560] {
        let l = LatticeSpec {
            cells,
            ..reference()
        };
        let modes = find_qnms(&l, WINDOW).unwrap();
        let q = mode(&modes, 0).quality;
        assert!(q >= last, "N = {cells}: Q = {q} after {last}");
        last = q;
    }
}

#[test]
fn transverse_set_grows_with_aperture() {
    let l = reference();
    let js: Vec<u32> = transverse_modes(&l).unwrap().iter().map(|t| t.j).collect();
    assert_eq!(js, vec![1, 3]);
    let wide = LatticeSpec {
        aperture: 10.0 * l.aperture,
        ..l
    };
    assert!(transverse_modes(&wide).unwrap().len() > js.len());
}

#[test]
fn transverse_orders_shift_mode_frequencies() {
    let l = reference();
    let modes = find_qnms(&l, WINDOW).unwrap();
    let ts = transverse_modes(&l).unwrap();
    let m0 = mode(&modes, 0);
    let f1 = mode_frequency_2d(m0, &ts[0]);
    let f3 = mode_frequency_2d(m0, &ts[1]);
    assert!(f1 - m0.frequency() < 3e6);
    assert!((f3 - f1 - 25e6).abs() < 8e6, "f03 − f01 = {}", f3 - f1);
}
