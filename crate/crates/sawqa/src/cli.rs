// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use std::fmt;
use std::path::{Path, PathBuf};

use chrono::Utc;
use clap::{Parser, Subcommand, ValueEnum};

use sawqa_core::lattice::{band_gap, dispersion};
use sawqa_core::qnm::quality_factor;
use sawqa_core::spectroscopy::{
    assemble_device, extract_anticrossing, fit_q_from_dip, fit_transmission, simulate_trace,
    DeviceAssembly,
};
use sawqa_core::transmon::FluxBias;
use sawqa_core::Error;

use crate::config::{Config, ConfigError, SolverKind, ToleranceProfile};
use crate::export::{self, Table};
use crate::manifest::{MapSidecar, RunManifest};
use crate::parallel::simulate_map_parallel;
use crate::reproduce::Reproduction;
use crate::units::{parse_quantity, Dimension};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;
pub const EXIT_ACCEPTANCE: u8 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "sawqa",
    version,
    about = "Transmon coupled to a surface-acoustic-wave phononic crystal"
)]
pub struct Cli {
    /// TOML configuration; the reference device is used when omitted.
    #[arg(long, global = true, value_name = "PATH")]
    pub config: Option<PathBuf>,
    /// Output directory (created if missing).
    #[arg(long, global = true, value_name = "DIR", default_value = "out")]
    pub out: PathBuf,
    /// Overrides `solver.kind`.
    #[arg(long, global = true, value_enum)]
    pub solver: Option<SolverArg>,
    /// Worker threads for maps; defaults to the available parallelism.
    #[arg(long, global = true, value_name = "N")]
    pub threads: Option<usize>,
    /// Overrides `tolerances.profile`.
    #[arg(long, global = true, value_enum)]
    pub tolerance_profile: Option<ProfileArg>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SolverArg {
    Semiclassical,
    Lindblad,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ProfileArg {
    Strict,
    Paper,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bloch dispersion over the first zone and the first stop band.
    Dispersion {
        #[arg(long, default_value_t = 400)]
        points: usize,
    },
    /// Quasinormal modes, their fields and the coupled (i, j) modes.
    Modes,
    /// Induced potentials and coupling strengths.
    Couplings,
    /// Transmission trace at one flux over the frequency grid.
    Trace {
        /// Φ/Φ₀.
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        flux: f64,
    },
    /// Flux × frequency transmission map.
    Map,
    /// Lorentzian fit of a transmission trace, giving Γ1 and Γ2.
    FitLorentzian {
        /// Trace CSV as written by `trace`; simulated from the config if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        flux: f64,
    },
    /// Hyperbola fit of an anticrossing in a map.
    FitAnticrossing {
        /// Map CSV as written by `map`; simulated from the config if omitted.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Frequency band, e.g. `--window "3.24 GHz" "3.28 GHz"`; the whole grid by default.
        #[arg(long, num_args = 2, value_names = ["LOW", "HIGH"])]
        window: Option<Vec<String>>,
    },
    /// Quality factors of the dips in a trace.
    FitQ {
        #[arg(long)]
        input: PathBuf,
        /// Column holding the dip signal.
        #[arg(long, default_value = "abs_t")]
        column: String,
    },
    /// Evaluates the full acceptance table and writes a summary.
    ReproducePaper,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Dispersion { .. } => "dispersion",
            Command::Modes => "modes",
            Command::Couplings => "couplings",
            Command::Trace { .. } => "trace",
            Command::Map => "map",
            Command::FitLorentzian { .. } => "fit-lorentzian",
            Command::FitAnticrossing { .. } => "fit-anticrossing",
            Command::FitQ { .. } => "fit-q",
            Command::ReproducePaper => "reproduce-paper",
        }
    }
}

/// A failed run: message plus exit status.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl Failure {
    fn config(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_CONFIG,
            message: message.into(),
        }
    }

    fn io(path: &Path, e: std::io::Error) -> Self {
        Failure {
            code: EXIT_NUMERICAL,
            message: format!("cannot write {}: {e}", path.display()),
        }
    }

    fn pipeline(stage: &str, e: Error) -> Self {
        // Errors caused by the inputs are configuration errors.
        let code = match e.root() {
            Error::InvalidParameter { .. }
            | Error::Domain(_)
            | Error::Precondition(_)
            | Error::DegenerateGap => EXIT_CONFIG,
            _ => EXIT_NUMERICAL,
        };
        Failure {
            code,
            message: format!("{stage}: {e}"),
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::config(format!("config error: {e}"))
    }
}

/// What a successful run produced.
#[derive(Debug, Default)]
pub struct Outcome {
    pub outputs: Vec<PathBuf>,
    /// Text for stdout.
    pub summary: String,
    /// Set by `reproduce-paper` when a criterion failed.
    pub acceptance_failed: bool,
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        if self.acceptance_failed {
            EXIT_ACCEPTANCE
        } else {
            EXIT_OK
        }
    }
}

pub fn resolve_config(cli: &Cli) -> Result<Config, Failure> {
    let mut config = match &cli.config {
        Some(p) => Config::from_path(p)?,
        None => Config::default(),
    };
    if let Some(s) = cli.solver {
        config.solver = match s {
            SolverArg::Semiclassical => SolverKind::Semiclassical,
            SolverArg::Lindblad => SolverKind::Lindblad,
        };
    }
    if let Some(p) = cli.tolerance_profile {
        config.profile = match p {
            ProfileArg::Strict => ToleranceProfile::Strict,
            ProfileArg::Paper => ToleranceProfile::Paper,
        };
    }
    Ok(config)
}

struct Run<'a> {
    out: &'a Path,
    outputs: Vec<PathBuf>,
}

impl Run<'_> {
    fn write(&mut self, name: &str, table: &Table) -> Result<(), Failure> {
        let path = self.out.join(name);
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir).map_err(|e| Failure::io(dir, e))?;
        }
        table.write(&path).map_err(|e| Failure::io(&path, e))?;
        self.outputs.push(path);
        Ok(())
    }
}

fn device(config: &Config) -> Result<DeviceAssembly, Failure> {
    assemble_device(&config.device()).map_err(|e| Failure::pipeline("device", e))
}

fn read_table(path: &Path) -> Result<Table, Failure> {
    Table::read(path).map_err(Failure::config)
}

/// Runs one command and writes its CSVs and manifest into `cli.out`.
pub fn run(cli: &Cli) -> Result<Outcome, Failure> {
    let started = Utc::now();
    let config = resolve_config(cli)?;
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if threads == 0 {
        return Err(Failure::config("--threads must be at least 1"));
    }
    std::fs::create_dir_all(&cli.out).map_err(|e| Failure::io(&cli.out, e))?;
    let mut run = Run {
        out: &cli.out,
        outputs: Vec::new(),
    };
    let mut outcome = Outcome::default();
    let solver = config.solver();

    match &cli.command {
        Command::Dispersion { points } => {
            if *points < 1 {
                return Err(Failure::config("--points must be at least 1"));
            }
            let kp = config.lattice.zone_edge();
            let ks: Vec<f64> = (1..=*points)
                .map(|n| kp * n as f64 / *points as f64)
                .collect();
            let branches =
                dispersion(&config.lattice, &ks).map_err(|e| Failure::pipeline("dispersion", e))?;
            run.write("dispersion.csv", &export::dispersion_table(&branches))?;
            let (lo, hi) =
                band_gap(&config.lattice).map_err(|e| Failure::pipeline("band gap", e))?;
            let mut gap = Table::new(&["f_low_Hz", "f_high_Hz"]);
            gap.push(vec![export::num(lo), export::num(hi)]);
            run.write("band_gap.csv", &gap)?;
            outcome.summary = format!("stop band {:.6} .. {:.6} GHz", lo / 1e9, hi / 1e9);
        }
        Command::Modes => {
            let d = device(&config)?;
            let energy: Vec<f64> = d
                .qnms
                .iter()
                .map(|m| quality_factor(m, &config.lattice))
                .collect::<Result<_, _>>()
                .map_err(|e| Failure::pipeline("quality factors", e))?;
            run.write("qnms.csv", &export::qnm_table(&d.qnms, &energy))?;
            let coupled: Vec<_> = d.coupled().collect();
            run.write("modes.csv", &export::mode_table(&coupled))?;
            for m in &d.qnms {
                run.write(
                    &format!("fields/field_i{}.csv", m.index),
                    &export::field_table(m),
                )?;
            }
            outcome.summary = format!(
                "{} quasinormal modes, {} coupled (i, j) modes",
                d.qnms.len(),
                coupled.len()
            );
        }
        Command::Couplings => {
            let d = device(&config)?;
            run.write("couplings.csv", &export::coupling_table(&d.modes))?;
            outcome.summary = format!("{} (i, j) modes", d.modes.len());
        }
        Command::Trace { flux } => {
            let d = device(&config)?;
            let freqs = config.frequency.values();
            let t = simulate_trace(&d, FluxBias::new(*flux), &freqs, config.rabi, &solver)
                .map_err(|e| Failure::pipeline("trace", e))?;
            run.write("trace.csv", &export::trace_table(&freqs, &t))?;
            outcome.summary = format!("{} points at flux {flux}", freqs.len());
        }
        Command::Map => {
            let d = device(&config)?;
            let map = simulate_map_parallel(&d, &config.sweep(), &solver, threads)
                .map_err(|e| Failure::pipeline("map", e))?;
            run.write("map.csv", &export::map_table(&map))?;
            let path = cli.out.join("map.json");
            MapSidecar::new(&config)
                .write(&path)
                .map_err(|e| Failure::io(&path, e))?;
            run.outputs.push(path);
            outcome.summary = format!("{} x {} map", map.rows(), map.frequency.len());
        }
        Command::FitLorentzian { input, flux } => {
            let (freqs, t) = match input {
                Some(p) => export::trace_from_table(&read_table(p)?).map_err(Failure::config)?,
                None => {
                    let d = device(&config)?;
                    let freqs = config.frequency.values();
                    let t = simulate_trace(&d, FluxBias::new(*flux), &freqs, config.rabi, &solver)
                        .map_err(|e| Failure::pipeline("trace", e))?;
                    (freqs, t)
                }
            };
            let fit =
                fit_transmission(&freqs, &t).map_err(|e| Failure::pipeline("Lorentzian fit", e))?;
            run.write("lorentzian_fit.csv", &export::transmission_fit_table(&fit))?;
            outcome.summary = format!(
                "Γ1/2π = {:.4} MHz, Γ2/2π = {:.4} MHz",
                fit.gamma1 / (2e6 * std::f64::consts::PI),
                fit.gamma2 / (2e6 * std::f64::consts::PI)
            );
        }
        Command::FitAnticrossing { input, window } => {
            let map = match input {
                Some(p) => export::map_from_table(&read_table(p)?, &config.transmon)
                    .map_err(Failure::config)?,
                None => simulate_map_parallel(&device(&config)?, &config.sweep(), &solver, threads)
                    .map_err(|e| Failure::pipeline("map", e))?,
            };
            let band = match window {
                Some(w) => {
                    let f = |s: &str| {
                        parse_quantity(s, Dimension::Frequency)
                            .map_err(|e| Failure::config(format!("--window: {e}")))
                    };
                    (f(&w[0])?, f(&w[1])?)
                }
                None => (map.frequency[0], map.frequency[map.frequency.len() - 1]),
            };
            let fit = extract_anticrossing(&map, band)
                .map_err(|e| Failure::pipeline("anticrossing fit", e))?;
            run.write("anticrossing.csv", &export::anticrossing_table(&[fit]))?;
            outcome.summary = format!(
                "f_m = {:.6} GHz, g/2π = {:.3} MHz",
                fit.mode_frequency / 1e9,
                fit.g / (2e6 * std::f64::consts::PI)
            );
        }
        Command::FitQ { input, column } => {
            let tab = read_table(input)?;
            let freqs = tab.column("f_Hz").map_err(Failure::config)?;
            let values = tab.column(column).map_err(Failure::config)?;
            let dips =
                fit_q_from_dip(&freqs, &values).map_err(|e| Failure::pipeline("dip fit", e))?;
            run.write("dip_fits.csv", &export::dip_table(&dips))?;
            let qs: Vec<String> = dips.iter().map(|d| format!("{:.0}", d.quality)).collect();
            outcome.summary = format!("Q = {}", qs.join(", "));
        }
        Command::ReproducePaper => {
            let report = Reproduction::new(config.clone(), threads).run();
            let mut tab = Table::new(&["criterion", "title", "passed", "elapsed_s"]);
            for c in &report.criteria {
                tab.push(vec![
                    c.id.to_string(),
                    c.title.to_string(),
                    c.passed().to_string(),
                    export::num(c.elapsed.as_secs_f64()),
                ]);
            }
            run.write("acceptance.csv", &tab)?;
            let text = report.to_string();
            let path = cli.out.join("acceptance.txt");
            export::write_text(&path, &text).map_err(|e| Failure::io(&path, e))?;
            run.outputs.push(path);
            outcome.acceptance_failed = !report.passed();
            outcome.summary = text.trim_end().to_string();
        }
    }

    let mut manifest = RunManifest::new(cli.command.name(), &config, threads, started);
    manifest.outputs = run
        .outputs
        .iter()
        .map(|p| p.strip_prefix(&cli.out).unwrap_or(p).display().to_string())
        .collect();
    manifest
        .write(&cli.out)
        .map_err(|e| Failure::io(&cli.out.join("manifest.json"), e))?;
    outcome.outputs = run.outputs;
    Ok(outcome)
}
