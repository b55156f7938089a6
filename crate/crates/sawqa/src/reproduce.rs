// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! The acceptance table, evaluated against a configuration.
//!
//! Each criterion returns a [`CriterionReport`] holding one [`Check`] per
//! compared quantity. A pipeline error inside a criterion becomes a failed
//! check rather than an abort, so one broken stage does not hide the rest.

use std::f64::consts::PI;
use std::fmt::{self, Display};
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sawqa_core::coupling::{
    coupling_strength, overlap_potential, zero_point_displacement, ElectrodeGeometry,
};
use sawqa_core::dynamics::{
    lindblad_steady_state, semiclassical_response, ModeParams, SystemModel,
};
use sawqa_core::lattice::{band_gap, transverse_modes};
use sawqa_core::qnm::quality_factor;
use sawqa_core::spectroscopy::{
    assemble_device, extract_anticrossing, fit_q_from_dip, fit_transmission, linspace,
    simulate_trace, CoupledMode, DeviceAssembly, Solver, SweepSpec,
};
use sawqa_core::transmon::{flux_for_frequency, matrix_element_xi0, FluxBias};
use sawqa_core::{Error, Result};

use crate::config::{Config, ToleranceProfile};
use crate::parallel::simulate_map_parallel;

const MHZ: f64 = 1e6;

/// (i, j, f) of the four modes seen in the reference experiment.
pub const REFERENCE_MODES: [(i32, u32, f64); 4] = [
    (-2, 1, 3.244e9),
    (0, 1, 3.262e9),
    (0, 3, 3.287e9),
    (2, 1, 3.313e9),
];
/// g/2π (Hz) in the order (0,1), (0,3), (−2,1), (2,1).
pub const REFERENCE_COUPLINGS: [(i32, u32, f64); 4] =
    [(0, 1, 53e6), (0, 3, 18e6), (-2, 1, 17e6), (2, 1, 6e6)];
pub const REFERENCE_PEAK_Q: f64 = 1500.0;
pub const REFERENCE_J3_SHIFT: f64 = 25e6;
/// (f, Q) of the reflection dips used in the fit round trip.
pub const REFERENCE_DIPS: [(f64, f64); 3] =
    [(3.244e9, 496.0), (3.262e9, 1040.0), (3.287e9, 1100.0)];
pub const SYNTHETIC_G: f64 = 2.0 * PI * 39e6;
pub const ORACLE_SEED: u64 = 0x5a5a_2026;
pub const ORACLE_MODELS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub gap_center_rel: f64,
    pub frequency_abs: f64,
    pub spacing_abs: f64,
    pub peak_q_rel: f64,
    pub q_definition_rel: f64,
    pub g01_rel: f64,
    pub ratio_rel: f64,
    /// Selection-rule zeros relative to g_{0,1}; the same in both profiles.
    pub selection: f64,
    pub j3_shift_abs: f64,
    /// Solver agreement, in units of Ω/Γ2.
    pub oracle: f64,
    pub truncation: f64,
    pub rate_rel: f64,
    pub g_fit_rel: f64,
    pub q_fit_rel: f64,
    pub depth_rel: f64,
}

impl Tolerances {
    pub fn strict() -> Self {
        Tolerances {
            gap_center_rel: 0.01,
            frequency_abs: 10e6,
            spacing_abs: 5e6,
            peak_q_rel: 0.30,
            q_definition_rel: 0.05,
            g01_rel: 0.20,
            ratio_rel: 0.25,
            selection: 1e-10,
            j3_shift_abs: 8e6,
            oracle: 1e-3,
            truncation: 1e-4,
            rate_rel: 0.02,
            g_fit_rel: 0.05,
            q_fit_rel: 0.05,
            depth_rel: 0.005,
        }
    }

    pub fn for_profile(profile: ToleranceProfile) -> Self {
        let s = Self::strict();
        match profile {
            ToleranceProfile::Strict => s,
            ToleranceProfile::Paper => Tolerances {
                gap_center_rel: 2.0 * s.gap_center_rel,
                frequency_abs: 2.0 * s.frequency_abs,
                spacing_abs: 2.0 * s.spacing_abs,
                peak_q_rel: 2.0 * s.peak_q_rel,
                q_definition_rel: 2.0 * s.q_definition_rel,
                g01_rel: 2.0 * s.g01_rel,
                ratio_rel: 2.0 * s.ratio_rel,
                selection: s.selection,
                j3_shift_abs: 2.0 * s.j3_shift_abs,
                oracle: 2.0 * s.oracle,
                truncation: 2.0 * s.truncation,
                rate_rel: 2.0 * s.rate_rel,
                g_fit_rel: 2.0 * s.g_fit_rel,
                q_fit_rel: 2.0 * s.q_fit_rel,
                depth_rel: 2.0 * s.depth_rel,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// One summary line.
    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        format!(
            "criterion {} {status}: {} ({:.2} s)",
            self.id,
            self.title,
            self.elapsed.as_secs_f64()
        )
    }
}

impl Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.line())?;
        for c in &self.checks {
            writeln!(
                f,
                "    {} {}: {}",
                if c.passed { "ok  " } else { "FAIL" },
                c.label,
                c.detail
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub profile: ToleranceProfile,
    pub criteria: Vec<CriterionReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(CriterionReport::passed)
    }
}

impl Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "acceptance ({} tolerances)", self.profile.name())?;
        for c in &self.criteria {
            write!(f, "{c}")?;
        }
        let passed = self.criteria.iter().filter(|c| c.passed()).count();
        writeln!(f, "{passed}/{} criteria passed", self.criteria.len())
    }
}

#[derive(Default)]
struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, label: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.0.push(Check {
            label: label.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn error(&mut self, label: impl Into<String>, err: &dyn Display) {
        self.push(label, false, format!("error: {err}"));
    }

    fn relative(&mut self, label: impl Into<String>, value: f64, target: f64, tol: f64) {
        let rel = value / target - 1.0;
        self.push(
            label,
            rel.abs() <= tol,
            format!(
                "{value:.6e} vs {target:.6e} ({:+.2}%, limit ±{:.2}%)",
                100.0 * rel,
                100.0 * tol
            ),
        );
    }

    fn absolute_mhz(&mut self, label: impl Into<String>, value: f64, target: f64, tol: f64) {
        let d = value - target;
        self.push(
            label,
            d.abs() <= tol,
            format!(
                "{:.3} MHz vs {:.3} MHz ({:+.3} MHz, limit ±{:.1} MHz)",
                value / MHZ,
                target / MHZ,
                d / MHZ,
                tol / MHZ
            ),
        );
    }

    fn runtime(&mut self, elapsed: Duration, limit: Duration) {
        self.push(
            "runtime",
            elapsed <= limit,
            format!(
                "{:.3} s (limit {} s)",
                elapsed.as_secs_f64(),
                limit.as_secs()
            ),
        );
    }
}

/// Evaluates the acceptance table for one configuration. The device is
/// assembled once and shared by the criteria that need it.
pub struct Reproduction {
    config: Config,
    tol: Tolerances,
    threads: usize,
    device: OnceLock<(core::result::Result<DeviceAssembly, Error>, Duration)>,
}

impl Reproduction {
    pub fn new(config: Config, threads: usize) -> Self {
        let tol = Tolerances::for_profile(config.profile);
        Reproduction {
            config,
            tol,
            threads: threads.max(1),
            device: OnceLock::new(),
        }
    }

    pub fn tolerances(&self) -> &Tolerances {
        &self.tol
    }

    fn device(&self) -> (&core::result::Result<DeviceAssembly, Error>, Duration) {
        let (d, t) = self.device.get_or_init(|| {
            let start = Instant::now();
            let d = assemble_device(&self.config.device());
            (d, start.elapsed())
        });
        (d, *t)
    }

    pub fn run(&self) -> Report {
        let criteria = (1..=8).map(|id| self.criterion(id)).collect();
        Report {
            profile: self.config.profile,
            criteria,
        }
    }

    pub fn criterion(&self, id: u8) -> CriterionReport {
        let start = Instant::now();
        let (title, checks) = match id {
            1 => ("band structure", self.band_structure()),
            2 => ("QNM frequencies", self.qnm_frequencies()),
            3 => ("quality factors", self.quality_factors()),
            4 => ("couplings", self.couplings()),
            5 => ("transverse confinement", self.transverse()),
            6 => ("oracle equivalence", self.oracle_equivalence()),
            7 => ("round-trip fits", self.round_trip_fits()),
            8 => ("full map reproduction", self.full_map()),
            _ => ("unknown criterion", {
                let mut c = Checks::default();
                c.push("id", false, format!("no criterion {id}"));
                c
            }),
        };
        CriterionReport {
            id,
            title,
            checks: checks.0,
            elapsed: start.elapsed(),
        }
    }

    fn with_device(&self, c: &mut Checks, f: impl FnOnce(&DeviceAssembly, &mut Checks)) {
        match self.device().0 {
            Ok(d) => f(d, c),
            Err(e) => c.error("device assembly", e),
        }
    }

    fn band_structure(&self) -> Checks {
        let mut c = Checks::default();
        let l = &self.config.lattice;
        let start = Instant::now();
        match band_gap(l) {
            Ok((lo, hi)) => {
                let elapsed = start.elapsed();
                let center = 0.5 * (lo + hi);
                c.relative(
                    format!("gap centre ({:.4}..{:.4} GHz) vs v/a", lo / 1e9, hi / 1e9),
                    center,
                    l.center_frequency(),
                    self.tol.gap_center_rel,
                );
                c.runtime(elapsed, Duration::from_secs(1));
            }
            Err(e) => c.error("band gap", &e),
        }
        c
    }

    fn qnm_frequencies(&self) -> Checks {
        let mut c = Checks::default();
        let (_, built) = self.device();
        self.with_device(&mut c, |d, c| {
            let coupled: Vec<&CoupledMode> = d.coupled().collect();
            let mut found = Vec::new();
            for &(i, j, f) in &REFERENCE_MODES {
                match coupled.iter().find(|m| m.i == i && m.j == j) {
                    Some(m) => {
                        c.absolute_mhz(
                            format!("f({i},{j})"),
                            m.frequency,
                            f,
                            self.tol.frequency_abs,
                        );
                        found.push((i, j, m.frequency, f));
                    }
                    None => c.push(
                        format!("f({i},{j})"),
                        false,
                        "mode not among the coupled modes",
                    ),
                }
            }
            for a in 0..found.len() {
                for b in a + 1..found.len() {
                    let (ia, ja, fa, ra) = found[a];
                    let (ib, jb, fb, rb) = found[b];
                    c.absolute_mhz(
                        format!("spacing ({ia},{ja})-({ib},{jb})"),
                        fb - fa,
                        rb - ra,
                        self.tol.spacing_abs,
                    );
                }
            }
        });
        c.runtime(built, Duration::from_secs(10));
        c
    }

    fn quality_factors(&self) -> Checks {
        let mut c = Checks::default();
        self.with_device(&mut c, |d, c| {
            let q = |i: i32| d.qnms.iter().find(|m| m.index == i).map(|m| m.quality);
            for (i, j) in [(0, 3), (0, 1), (1, 1)] {
                match d.find(i, j) {
                    Some(m) => c.relative(
                        format!("Q({i},{j})"),
                        m.quality,
                        REFERENCE_PEAK_Q,
                        self.tol.peak_q_rel,
                    ),
                    None => c.push(format!("Q({i},{j})"), false, "mode not found"),
                }
            }
            for side in [[0, -1, -2, -3], [1, 2, 3, 4]] {
                let qs: Option<Vec<f64>> = side.iter().map(|&i| q(i)).collect();
                let label = format!("Q falls over i = {side:?}");
                match qs {
                    Some(qs) => {
                        let ok = qs.windows(2).all(|w| w[1] < w[0]);
                        let text: Vec<String> = qs.iter().map(|v| format!("{v:.0}")).collect();
                        c.push(label, ok, text.join(" > "));
                    }
                    None => c.push(label, false, "mode missing"),
                }
            }
            let mut worst: (f64, i32) = (0.0, 0);
            let mut compared = 0;
            for m in d.qnms.iter().filter(|m| m.quality > 100.0) {
                match quality_factor(m, &self.config.lattice) {
                    Ok(qe) => {
                        compared += 1;
                        let rel = (qe / m.quality - 1.0).abs();
                        if rel > worst.0 {
                            worst = (rel, m.index);
                        }
                    }
                    Err(e) => c.error(format!("energy Q of mode {}", m.index), &e),
                }
            }
            c.push(
                "energy vs complex-frequency Q",
                compared > 0 && worst.0 <= self.tol.q_definition_rel,
                format!(
                    "worst {:.3}% at i = {} over {compared} modes (limit {:.1}%)",
                    100.0 * worst.0,
                    worst.1,
                    100.0 * self.tol.q_definition_rel
                ),
            );
        });
        c
    }

    fn couplings(&self) -> Checks {
        let mut c = Checks::default();
        self.with_device(&mut c, |d, c| {
            let Some(g01) = d.find(0, 1).map(|m| m.g) else {
                c.push("g(0,1)", false, "mode (0,1) not found");
                return;
            };
            let reference01 = REFERENCE_COUPLINGS[0].2;
            c.relative("g(0,1)/2π", g01 / (2.0 * PI), reference01, self.tol.g01_rel);
            for &(i, j, g_ref) in &REFERENCE_COUPLINGS[1..] {
                match d.find(i, j) {
                    Some(m) => c.relative(
                        format!("g({i},{j})/g(0,1)"),
                        m.g / g01,
                        g_ref / reference01,
                        self.tol.ratio_rel,
                    ),
                    None => c.push(format!("g({i},{j})"), false, "mode not found"),
                }
            }
            let odd = d
                .modes
                .iter()
                .filter(|m| m.i % 2 != 0)
                .map(|m| m.g)
                .fold(0.0, f64::max);
            c.push(
                "odd-i couplings",
                odd < self.tol.selection * g01,
                format!(
                    "max {:.2e} of g(0,1) (limit {:.0e})",
                    odd / g01,
                    self.tol.selection
                ),
            );
            match self.even_j_coupling(d) {
                Ok(even) => c.push(
                    "even-j couplings",
                    even < self.tol.selection * g01,
                    format!(
                        "max {:.2e} of g(0,1) over j = 2, 4 (limit {:.0e})",
                        even / g01,
                        self.tol.selection
                    ),
                ),
                Err(e) => c.error("even-j couplings", &e),
            }
        });
        c
    }

    fn even_j_coupling(&self, d: &DeviceAssembly) -> Result<f64> {
        let spec = &self.config.device();
        let geom = ElectrodeGeometry::from_lattice(&spec.lattice)?;
        let z0 = zero_point_displacement(&spec.lattice, &spec.piezo);
        let xi0 = matrix_element_xi0(&spec.transmon, FluxBias::new(0.0));
        let mut worst: f64 = 0.0;
        for q in &d.qnms {
            for j in [2, 4] {
                let v = overlap_potential(&q.field, q.dx, &geom, j, z0, &spec.piezo)?;
                worst = worst.max(coupling_strength(xi0, spec.transmon.c_q, v)?);
            }
        }
        Ok(worst)
    }

    fn transverse(&self) -> Checks {
        let mut c = Checks::default();
        match transverse_modes(&self.config.lattice) {
            Ok(ts) => {
                let js: Vec<u32> = ts.iter().map(|t| t.j).collect();
                c.push(
                    "confined j",
                    js == [1, 3],
                    format!("{js:?} (expected [1, 3])"),
                );
            }
            Err(e) => c.error("confined j", &e),
        }
        self.with_device(&mut c, |d, c| match (d.find(0, 1), d.find(0, 3)) {
            (Some(a), Some(b)) => c.absolute_mhz(
                "f(0,3) - f(0,1)",
                b.frequency - a.frequency,
                REFERENCE_J3_SHIFT,
                self.tol.j3_shift_abs,
            ),
            _ => c.push("f(0,3) - f(0,1)", false, "mode (0,1) or (0,3) not found"),
        });
        c
    }

    fn oracle_equivalence(&self) -> Checks {
        let mut c = Checks::default();
        let start = Instant::now();
        let models = oracle_suite(ORACLE_SEED, ORACLE_MODELS);
        let (mut worst_solver, mut worst_trunc) = ((0.0, 0), (0.0, 0));
        let mut failed = false;
        for (k, m) in models.iter().enumerate() {
            let scale = m.rabi / m.gamma2();
            let res = semiclassical_response(m).and_then(|s| {
                let l2 = lindblad_steady_state(m, 2)?;
                let l3 = lindblad_steady_state(m, 3)?;
                Ok((
                    (l2.sigma_minus - s.sigma_minus).norm() / scale,
                    (l3.sigma_minus - l2.sigma_minus).norm() / scale,
                ))
            });
            match res {
                Ok((a, b)) => {
                    if a > worst_solver.0 {
                        worst_solver = (a, k);
                    }
                    if b > worst_trunc.0 {
                        worst_trunc = (b, k);
                    }
                }
                Err(e) => {
                    failed = true;
                    c.error(format!("model {k}"), &e);
                }
            }
        }
        if !failed {
            let (w, k) = worst_solver;
            let m = &models[k];
            c.push(
                "Lindblad vs semiclassical",
                w <= self.tol.oracle,
                format!(
                    "worst {w:.2e}·Ω/Γ2 in model {k} (Ω = {:.3}·Γ1, {} modes; limit {:.0e})",
                    m.rabi / m.gamma1,
                    m.modes.len(),
                    self.tol.oracle
                ),
            );
            let (w, k) = worst_trunc;
            c.push(
                "n_max 2 -> 3",
                w <= self.tol.truncation,
                format!(
                    "worst {w:.2e}·Ω/Γ2 in model {k} (limit {:.0e})",
                    self.tol.truncation
                ),
            );
        }
        c.runtime(start.elapsed(), Duration::from_secs(120));
        c
    }

    fn round_trip_fits(&self) -> Checks {
        let mut c = Checks::default();
        let t = self.config.transmon;
        let bare = DeviceAssembly::from_modes(t, Vec::new()).and_then(|bare| {
            let fa = 3.262e9;
            let bias = flux_for_frequency(&t, fa)?;
            Ok((bare, fa, bias))
        });
        match bare {
            Ok((bare, fa, bias)) => {
                let freqs = linspace(fa - 75e6, fa + 75e6, 301);
                match simulate_trace(&bare, bias, &freqs, t.gamma1 / 20.0, &Solver::Semiclassical)
                    .and_then(|tr| fit_transmission(&freqs, &tr))
                {
                    Ok(fit) => {
                        c.relative("fitted Γ1", fit.gamma1, t.gamma1, self.tol.rate_rel);
                        c.relative("fitted Γ2", fit.gamma2, t.gamma2, self.tol.rate_rel);
                    }
                    Err(e) => c.error("rate fit", &e),
                }
                // Dip depth from the density-matrix solver at weak drive.
                let lind = Solver::Lindblad {
                    n_max: 1,
                    options: Default::default(),
                };
                match simulate_trace(&bare, bias, &[fa, fa + 1e6], t.gamma1 / 20.0, &lind) {
                    Ok(tr) => c.relative(
                        "resonant dip depth",
                        1.0 - tr[0].norm(),
                        t.gamma1 / (2.0 * t.gamma2),
                        self.tol.depth_rel,
                    ),
                    Err(e) => c.error("resonant dip depth", &e),
                }
            }
            Err(e) => c.error("bare atom", &e),
        }

        match self.synthetic_anticrossing() {
            Ok(g) => c.relative(
                "anticrossing g/2π",
                g / (2.0 * PI),
                SYNTHETIC_G / (2.0 * PI),
                self.tol.g_fit_rel,
            ),
            Err(e) => c.error("anticrossing g", &e),
        }

        let freqs = linspace(3.23e9, 3.30e9, 2001);
        let trace = synthetic_dips(&freqs, &REFERENCE_DIPS, 0.4);
        match fit_q_from_dip(&freqs, &trace) {
            Ok(dips) if dips.len() == REFERENCE_DIPS.len() => {
                for (d, &(f, q)) in dips.iter().zip(&REFERENCE_DIPS) {
                    c.relative(
                        format!("Q at {:.3} GHz", f / 1e9),
                        d.quality,
                        q,
                        self.tol.q_fit_rel,
                    );
                }
            }
            Ok(dips) => c.push(
                "dip count",
                false,
                format!("{} dips for {} planted", dips.len(), REFERENCE_DIPS.len()),
            ),
            Err(e) => c.error("dip fit", &e),
        }
        c
    }

    fn synthetic_anticrossing(&self) -> Result<f64> {
        let t = self.config.transmon;
        let mode = CoupledMode {
            i: 0,
            j: 1,
            frequency: 3.262e9,
            quality: 1040.0,
            kx: 0.0,
            potential: 0.0,
            g: SYNTHETIC_G,
            bias: FluxBias::new(0.0),
        };
        let device = DeviceAssembly::from_modes(t, vec![mode])?;
        let window = (3.17e9, 3.36e9);
        let sweep = SweepSpec {
            flux: flux_span(&self.config, (3.16e9, 3.36e9), 101)?,
            frequency: linspace(window.0, window.1, 801),
            rabi: t.gamma1 / 20.0,
        };
        let map = simulate_map_parallel(&device, &sweep, &Solver::Semiclassical, self.threads)?;
        Ok(extract_anticrossing(&map, window)?.g)
    }

    fn full_map(&self) -> Checks {
        let mut c = Checks::default();
        let start = Instant::now();
        self.with_device(&mut c, |d, c| {
            let sweep = self.config.sweep();
            let map = match simulate_map_parallel(d, &sweep, &Solver::Semiclassical, self.threads) {
                Ok(m) => m,
                Err(e) => return c.error("map", &e),
            };
            c.push(
                "map size",
                map.rows() == 201 && map.frequency.len() == 401,
                format!(
                    "{} x {} on {} threads",
                    map.rows(),
                    map.frequency.len(),
                    self.threads
                ),
            );
            let (lo, hi) = (
                sweep.frequency[0],
                sweep.frequency[sweep.frequency.len() - 1],
            );
            let mut strongest: Option<f64> = None;
            for (k, &(i, j, f)) in REFERENCE_MODES.iter().enumerate() {
                let below = if k == 0 {
                    lo
                } else {
                    0.5 * (REFERENCE_MODES[k - 1].2 + f)
                };
                let above = if k + 1 == REFERENCE_MODES.len() {
                    hi
                } else {
                    0.5 * (REFERENCE_MODES[k + 1].2 + f)
                };
                match extract_anticrossing(&map, (below, above)) {
                    Ok(fit) => {
                        c.absolute_mhz(
                            format!("anticrossing near ({i},{j})"),
                            fit.mode_frequency,
                            f,
                            self.tol.frequency_abs,
                        );
                        strongest = Some(strongest.map_or(fit.g, |s: f64| s.max(fit.g)));
                    }
                    Err(e) => c.error(format!("anticrossing near ({i},{j})"), &e),
                }
            }
            match (strongest, d.find(0, 1)) {
                (Some(g), Some(m)) => {
                    let kappa = 2.0 * PI * m.frequency / m.quality;
                    let hwhm = 0.5 * (self.config.transmon.gamma2 + 0.5 * kappa);
                    let diff = 2.0 * g - 2.0 * m.g;
                    c.push(
                        "strongest splitting vs 2g(0,1)",
                        diff.abs() <= 2.0 * hwhm,
                        format!(
                            "{:.2} MHz vs {:.2} MHz (limit ±{:.2} MHz)",
                            2.0 * g / (2.0 * PI * MHZ),
                            2.0 * m.g / (2.0 * PI * MHZ),
                            2.0 * hwhm / (2.0 * PI * MHZ)
                        ),
                    );
                }
                _ => c.push(
                    "strongest splitting vs 2g(0,1)",
                    false,
                    "no anticrossing or no (0,1) mode",
                ),
            }
        });
        c.runtime(start.elapsed(), Duration::from_secs(60));
        c
    }
}

/// Flux grid over which the bare atom sweeps `band`, highest frequency first.
pub fn flux_span(config: &Config, band: (f64, f64), points: usize) -> Result<Vec<f64>> {
    let a = flux_for_frequency(&config.transmon, band.1)?.value();
    let b = flux_for_frequency(&config.transmon, band.0)?.value();
    Ok(linspace(a.min(b), a.max(b), points))
}

/// Sum of Lorentzian dips of HWHM f/(2Q) on a unit baseline.
pub fn synthetic_dips(freqs: &[f64], dips: &[(f64, f64)], depth: f64) -> Vec<f64> {
    freqs
        .iter()
        .map(|f| {
            1.0 - dips
                .iter()
                .map(|&(f0, q)| {
                    let x = (f - f0) * 2.0 * q / f0;
                    depth / (1.0 + x * x)
                })
                .sum::<f64>()
        })
        .collect()
}

/// Seeded random models for the solver cross-check. Every model respects
/// Ω ≤ Γ1/10 and the rotating-wave window, with one to three modes near the
/// atom and the probe within a few linewidths of a resonance.
pub fn oracle_suite(seed: u64, count: usize) -> Vec<SystemModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let two_pi = 2.0 * PI;
    (0..count)
        .map(|_| {
            let gamma1 = two_pi * rng.gen_range(4.0..12.0) * MHZ;
            let gamma2 = gamma1 * rng.gen_range(0.5..1.5);
            let fa = rng.gen_range(3.20e9..3.35e9);
            let n_modes = rng.gen_range(1..=3);
            let modes: Vec<ModeParams> = (0..n_modes)
                .map(|_| {
                    let fm = fa + rng.gen_range(-60e6..60e6);
                    ModeParams::from_quality(
                        two_pi * fm,
                        rng.gen_range(300.0..1500.0),
                        two_pi * rng.gen_range(5.0..60.0) * MHZ,
                    )
                })
                .collect();
            let anchor = if rng.gen_bool(0.5) {
                fa
            } else {
                modes[0].omega / two_pi
            };
            let probe = anchor + rng.gen_range(-3.0..3.0) * gamma2 / two_pi;
            SystemModel {
                atom_omega: two_pi * fa,
                gamma1,
                gamma_phi: gamma2 - 0.5 * gamma1,
                modes,
                drive_omega: two_pi * probe,
                rabi: gamma1 / 10.0 * rng.gen_range(0.1..=1.0),
            }
        })
        .collect()
}
