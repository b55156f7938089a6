// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sawqa_core::dynamics::LindbladOptions;
use sawqa_core::spectroscopy::{
    extract_anticrossing, fit_lorentzian, fit_q_from_dip, fit_transmission, linspace, row_lines,
    simulate_map, simulate_trace, CoupledMode, DeviceAssembly, Solver, SweepSpec,
};
use sawqa_core::transmon::{flux_for_frequency, qubit_frequency, FluxBias, TransmonSpec};
use sawqa_core::Error;

const MHZ: f64 = 2.0 * PI * 1e6;

fn mode(i: i32, j: u32, frequency: f64, quality: f64, g: f64) -> CoupledMode {
    CoupledMode {
        i,
        j,
        frequency,
        quality,
        kx: 0.0,
        potential: 0.0,
        g,
        bias: FluxBias::new(0.0),
    }
}

fn bare() -> DeviceAssembly {
    DeviceAssembly::from_modes(TransmonSpec::default(), vec![]).unwrap()
}

fn single_mode(g: f64) -> DeviceAssembly {
    DeviceAssembly::from_modes(
        TransmonSpec::default(),
        vec![mode(0, 1, 3.262e9, 1040.0, g)],
    )
    .unwrap()
}

fn bias_at(f: f64) -> FluxBias {
    flux_for_frequency(&TransmonSpec::default(), f).unwrap()
}

#[test]
fn detuned_atom_shows_one_bloch_dip() {
    let freqs = linspace(2.9e9, 3.1e9, 801);
    let t = simulate_trace(
        &bare(),
        bias_at(3.0e9),
        &freqs,
        0.1 * MHZ,
        &Solver::Semiclassical,
    )
    .unwrap();
    let min = t.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    assert!((min - (1.0 - 8.0 / 22.0)).abs() < 1e-6, "{min}");

    // Reference-device couplings 200+ MHz away barely move the depth.
    let modes = vec![
        mode(0, 1, 3.262e9, 1040.0, 53.0 * MHZ),
        mode(-2, 1, 3.244e9, 496.0, 17.0 * MHZ),
    ];
    let dev = DeviceAssembly::from_modes(TransmonSpec::default(), modes).unwrap();
    let t = simulate_trace(
        &dev,
        bias_at(3.0e9),
        &freqs,
        0.1 * MHZ,
        &Solver::Semiclassical,
    )
    .unwrap();
    let min = t.iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
    assert!((min / (1.0 - 8.0 / 22.0) - 1.0).abs() < 0.02, "{min}");
}

#[test]
fn resonant_atom_shows_vacuum_rabi_doublet() {
    let g = 39.0 * MHZ;
    let dev = single_mode(g);
    let freqs = linspace(3.18e9, 3.34e9, 3201);
    let t = simulate_trace(
        &dev,
        bias_at(3.262e9),
        &freqs,
        0.1 * MHZ,
        &Solver::Semiclassical,
    )
    .unwrap();
    let a: Vec<f64> = t.iter().map(|z| z.norm()).collect();
    let dips: Vec<f64> = (1..a.len() - 1)
        .filter(|&k| a[k] < a[k - 1] && a[k] < a[k + 1])
        .map(|k| freqs[k])
        .collect();
    assert_eq!(dips.len(), 2, "{dips:?}");
    assert!(((dips[1] - dips[0]) * 2.0 * PI / (2.0 * g) - 1.0).abs() < 0.02);
}

#[test]
fn solvers_agree_without_modes() {
    let freqs = linspace(3.24e9, 3.28e9, 41);
    let rabi = 8.0 * MHZ / 20.0;
    let lind = Solver::Lindblad {
        n_max: 2,
        options: LindbladOptions::default(),
    };
    let a = simulate_trace(
        &bare(),
        bias_at(3.26e9),
        &freqs,
        rabi,
        &Solver::Semiclassical,
    )
    .unwrap();
    let b = simulate_trace(&bare(), bias_at(3.26e9), &freqs, rabi, &lind).unwrap();
    for (x, y) in a.iter().zip(&b) {
        // |Δt| = Γ1/Ω·|Δ⟨σ⁻⟩| and the bound on ⟨σ⁻⟩ is 1e-3·Ω/Γ2.
        assert!((x - y).norm() < 1e-3 * 8.0 / 11.0);
    }
}

#[test]
fn solver_errors_name_the_frequency() {
    let freqs = linspace(3.24e9, 3.28e9, 5);
    let err = simulate_trace(
        &bare(),
        bias_at(3.26e9),
        &freqs,
        4.0 * MHZ,
        &Solver::Semiclassical,
    )
    .unwrap_err();
    assert!(matches!(err.root(), Error::Precondition(_)));
    assert!(err.to_string().contains("3.240000e9 Hz"), "{err}");
}

fn sweep(flux_points: usize, freq_points: usize) -> SweepSpec {
    let t = TransmonSpec::default();
    let hi = flux_for_frequency(&t, 3.36e9).unwrap().value();
    let lo = flux_for_frequency(&t, 3.16e9).unwrap().value();
    SweepSpec {
        flux: linspace(hi, lo, flux_points),
        frequency: linspace(3.17e9, 3.36e9, freq_points),
        rabi: 0.1 * MHZ,
    }
}

#[test]
fn uncoupled_map_follows_the_bare_atom() {
    let s = sweep(21, 761);
    let map = simulate_map(&bare(), &s, &Solver::Semiclassical).unwrap();
    let step = s.frequency[1] - s.frequency[0];
    for r in 0..map.rows() {
        let row = map.row(r);
        let k = (0..row.len())
            .min_by(|&a, &b| row[a].norm().total_cmp(&row[b].norm()))
            .unwrap();
        let fa = map.atom_frequency[r];
        if fa > s.frequency[0] && fa < s.frequency[s.frequency.len() - 1] {
            assert!((s.frequency[k] - fa).abs() <= step, "row {r}");
        }
    }
}

#[test]
fn map_is_even_in_flux() {
    let dev = single_mode(39.0 * MHZ);
    let s = sweep(9, 121);
    let mirrored = SweepSpec {
        flux: s.flux.iter().rev().map(|p| -p).collect(),
        ..s.clone()
    };
    let a = simulate_map(&dev, &s, &Solver::Semiclassical).unwrap();
    let b = simulate_map(&dev, &mirrored, &Solver::Semiclassical).unwrap();
    let n = a.rows();
    for r in 0..n {
        for (x, y) in a.row(r).iter().zip(b.row(n - 1 - r)) {
            assert!((x - y).norm() < 1e-9);
        }
    }
}

#[test]
fn lorentzian_round_trip_recovers_rates() {
    let t = TransmonSpec::default();
    let fa = qubit_frequency(&t, bias_at(3.0e9)).unwrap();
    let freqs = linspace(fa - 75e6, fa + 75e6, 301);
    let trace = simulate_trace(
        &bare(),
        bias_at(3.0e9),
        &freqs,
        0.1 * MHZ,
        &Solver::Semiclassical,
    )
    .unwrap();
    let fit = fit_transmission(&freqs, &trace).unwrap();
    assert!((fit.gamma1 / (8.0 * MHZ) - 1.0).abs() < 0.02);
    assert!((fit.gamma2 / (11.0 * MHZ) - 1.0).abs() < 0.02);
    assert!((fit.lorentzian.center - fa).abs() < 1e3);

    let fine = linspace(fa - 75e6, fa + 75e6, 601);
    let trace2 = simulate_trace(
        &bare(),
        bias_at(3.0e9),
        &fine,
        0.1 * MHZ,
        &Solver::Semiclassical,
    )
    .unwrap();
    let fit2 = fit_transmission(&fine, &trace2).unwrap();
    assert!((fit2.gamma1 / fit.gamma1 - 1.0).abs() < 1e-3);
    assert!((fit2.gamma2 / fit.gamma2 - 1.0).abs() < 1e-3);
}

#[test]
fn lorentzian_fit_tolerates_noise() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let freqs = linspace(3.0e9, 3.2e9, 401);
    let values: Vec<f64> = freqs
        .iter()
        .map(|f| {
            let x = (f - 3.1e9) / 11e6;
            1.0 - 0.36 / (1.0 + x * x) + 0.004 * (rng.gen::<f64>() - 0.5)
        })
        .collect();
    let fit = fit_lorentzian(&freqs, &values).unwrap();
    assert!((fit.half_width / 11e6 - 1.0).abs() < 0.02);
    assert!((fit.depth / 0.36 - 1.0).abs() < 0.02);
}

#[test]
fn flat_trace_has_no_dip() {
    let freqs = linspace(3.0e9, 3.2e9, 401);
    assert!(matches!(
        fit_lorentzian(&freqs, &vec![1.0; 401]),
        Err(Error::Fit(_))
    ));
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let noisy: Vec<f64> = (0..401)
        .map(|_| 1.0 + 0.01 * (rng.gen::<f64>() - 0.5))
        .collect();
    assert!(matches!(fit_lorentzian(&freqs, &noisy), Err(Error::Fit(_))));
}

fn dips(freqs: &[f64], set: &[(f64, f64)]) -> Vec<f64> {
    freqs
        .iter()
        .map(|f| {
            1.0 - set
                .iter()
                .map(|&(f0, q)| {
                    let x = (f - f0) / (f0 / (2.0 * q));
                    0.4 / (1.0 + x * x)
                })
                .sum::<f64>()
        })
        .collect()
}

#[test]
fn q_round_trip_single_and_composite() {
    let freqs = linspace(3.23e9, 3.30e9, 2001);
    let single = fit_q_from_dip(&freqs, &dips(&freqs, &[(3.262e9, 1040.0)])).unwrap();
    assert_eq!(single.len(), 1);
    assert!((single[0].quality / 1040.0 - 1.0).abs() < 0.03);

    let set = [(3.244e9, 496.0), (3.262e9, 1040.0), (3.287e9, 1100.0)];
    let found = fit_q_from_dip(&freqs, &dips(&freqs, &set)).unwrap();
    assert_eq!(found.len(), 3);
    for (d, &(f0, q)) in found.iter().zip(&set) {
        assert!((d.fit.center - f0).abs() < 1e5);
        assert!((d.quality / q - 1.0).abs() < 0.05, "Q {} vs {q}", d.quality);
    }
}

#[test]
fn unresolved_dip_is_a_resolution_error() {
    let freqs = linspace(3.20e9, 3.35e9, 401);
    let on_grid = freqs[200];
    let err = fit_q_from_dip(&freqs, &dips(&freqs, &[(on_grid, 1e6)])).unwrap_err();
    assert!(matches!(err, Error::Resolution(_)), "{err}");
}

#[test]
fn overlapping_dips_are_ambiguous() {
    let freqs = linspace(3.23e9, 3.30e9, 2001);
    for sep in [1.5e6, 2.5e6] {
        let set = [(3.262e9, 1040.0), (3.262e9 + sep, 1040.0)];
        let err = fit_q_from_dip(&freqs, &dips(&freqs, &set)).unwrap_err();
        assert!(matches!(err, Error::Ambiguous { .. }), "sep {sep}: {err}");
    }
}

fn anticrossing_map(g: f64, flux_points: usize) -> sawqa_core::spectroscopy::TransmissionMap {
    simulate_map(
        &single_mode(g),
        &sweep(flux_points, 801),
        &Solver::Semiclassical,
    )
    .unwrap()
}

#[test]
fn anticrossing_round_trip() {
    let map = anticrossing_map(39.0 * MHZ, 61);
    let fit = extract_anticrossing(&map, (3.17e9, 3.36e9)).unwrap();
    assert!(
        (fit.g / (39.0 * MHZ) - 1.0).abs() < 0.05,
        "g/2π = {} MHz",
        fit.g / MHZ
    );
    assert!((fit.mode_frequency - 3.262e9).abs() < 2e6);
    assert!(fit.g >= 0.0 && fit.rows >= 3);

    // Smallest splitting sits at the crossing flux.
    let step = (map.flux[1] - map.flux[0]).abs();
    let (mut best_row, mut best_split) = (0, f64::INFINITY);
    for r in 0..map.rows() {
        let lines = row_lines(&map, r, (3.17e9, 3.36e9));
        if lines.len() >= 2 {
            let split = lines
                .windows(2)
                .map(|w| w[1] - w[0])
                .fold(f64::INFINITY, f64::min)
                .max(0.0);
            let split = if lines.len() == 2 {
                split
            } else {
                f64::INFINITY
            };
            if split < best_split {
                best_split = split;
                best_row = r;
            }
        }
    }
    assert!((map.flux[best_row] - fit.crossing_flux).abs() <= step);

    let dense = anticrossing_map(39.0 * MHZ, 121);
    let fit2 = extract_anticrossing(&dense, (3.17e9, 3.36e9)).unwrap();
    assert!((fit2.g / fit.g - 1.0).abs() < 0.02);
}

#[test]
fn uncoupled_mode_shows_no_anticrossing() {
    let map = anticrossing_map(0.0, 41);
    assert!(matches!(
        extract_anticrossing(&map, (3.17e9, 3.36e9)),
        Err(Error::Fit(_))
    ));
}
