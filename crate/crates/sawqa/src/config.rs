// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! TOML run configuration.
//!
//! Every section and key is optional; missing values fall back to the
//! reference device. Dimensional values are `"<number> <unit>"` strings (see
//! [`crate::units`]). Unknown keys are rejected.

use std::fmt;
use std::ops::Range;
use std::path::{Path, PathBuf};

use serde::Deserialize;
use sha2::{Digest, Sha256};
use toml::{Spanned, Value};

use sawqa_core::coupling::PiezoConstants;
use sawqa_core::dynamics::{LindbladOptions, DEFAULT_DIMENSION_CAP};
use sawqa_core::lattice::LatticeSpec;
use sawqa_core::spectroscopy::{linspace, DeviceSpec, Solver, SweepSpec};
use sawqa_core::transmon::{ChargingConvention, TransmonSpec};
use sawqa_core::Error;

use crate::units::{format_quantity, parse_quantity, Dimension};

#[derive(Debug)]
pub enum ConfigError {
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    /// TOML syntax or schema error; the message carries line and column.
    Syntax(String),
    Invalid {
        key: String,
        line: Option<usize>,
        message: String,
    },
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Io { path, source } => {
                write!(f, "cannot read {}: {source}", path.display())
            }
            ConfigError::Syntax(msg) => write!(f, "{}", msg.trim_end()),
            ConfigError::Invalid {
                key,
                line: Some(line),
                message,
            } => write!(f, "line {line}, key `{key}`: {message}"),
            ConfigError::Invalid {
                key,
                line: None,
                message,
            } => write!(f, "key `{key}`: {message}"),
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ToleranceProfile {
    /// Acceptance tolerances as tabulated.
    #[default]
    Strict,
    /// Twice the strict widths, for comparisons against values read off figures.
    Paper,
}

impl ToleranceProfile {
    pub fn name(self) -> &'static str {
        match self {
            ToleranceProfile::Strict => "strict",
            ToleranceProfile::Paper => "paper",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "strict" => Some(ToleranceProfile::Strict),
            "paper" => Some(ToleranceProfile::Paper),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SolverKind {
    #[default]
    Semiclassical,
    Lindblad,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Semiclassical => "semiclassical",
            SolverKind::Lindblad => "lindblad",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "semiclassical" => Some(SolverKind::Semiclassical),
            "lindblad" => Some(SolverKind::Lindblad),
            _ => None,
        }
    }
}

/// Uniform grid `points` samples from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl Grid {
    pub fn values(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.points)
    }
}

/// Fully resolved configuration, all values in SI (rates in rad/s).
#[derive(Debug, Clone, PartialEq)]
pub struct Config {
    pub lattice: LatticeSpec,
    pub transmon: TransmonSpec,
    pub piezo: PiezoConstants,
    /// Probe Rabi frequency Ω (rad/s).
    pub rabi: f64,
    pub flux: Grid,
    pub frequency: Grid,
    /// Band in which modes are resolved (Hz).
    pub window: (f64, f64),
    pub solver: SolverKind,
    pub n_max: usize,
    pub dimension_cap: usize,
    pub profile: ToleranceProfile,
}

impl Default for Config {
    fn default() -> Self {
        let device = DeviceSpec::default();
        Config {
            lattice: device.lattice,
            transmon: device.transmon,
            piezo: device.piezo,
            rabi: device.transmon.gamma1 / 20.0,
            // The bare atom crosses 3.19..3.36 GHz over this flux range.
            flux: Grid {
                start: 0.18,
                stop: 0.225,
                points: 201,
            },
            frequency: Grid {
                start: 3.20e9,
                stop: 3.35e9,
                points: 401,
            },
            window: device.window,
            solver: SolverKind::Semiclassical,
            n_max: 2,
            dimension_cap: DEFAULT_DIMENSION_CAP,
            profile: ToleranceProfile::Strict,
        }
    }
}

impl Config {
    pub fn device(&self) -> DeviceSpec {
        DeviceSpec {
            lattice: self.lattice,
            transmon: self.transmon,
            piezo: self.piezo,
            window: self.window,
        }
    }

    pub fn sweep(&self) -> SweepSpec {
        SweepSpec {
            flux: self.flux.values(),
            frequency: self.frequency.values(),
            rabi: self.rabi,
        }
    }

    pub fn solver(&self) -> Solver {
        match self.solver {
            SolverKind::Semiclassical => Solver::Semiclassical,
            SolverKind::Lindblad => Solver::Lindblad {
                n_max: self.n_max,
                options: LindbladOptions {
                    dimension_cap: self.dimension_cap,
                    ..LindbladOptions::default()
                },
            },
        }
    }

    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let raw: RawConfig =
            toml::from_str(text).map_err(|e| ConfigError::Syntax(e.to_string()))?;
        Reader { src: text }.resolve(&raw)
    }

    /// Canonical TOML: fixed key order, SI units, shortest round-trip numbers.
    pub fn to_toml(&self) -> String {
        let l = &self.lattice;
        let t = &self.transmon;
        let q = |v, d| format!("\"{}\"", format_quantity(v, d));
        let convention = match t.convention {
            ChargingConvention::SingleElectron => "single-electron",
            ChargingConvention::CooperPair => "cooper-pair",
        };
        let mut s = String::new();
        s += "[lattice]\n";
        s += &format!("P = {}\n", q(l.period, Dimension::Length));
        s += &format!("N = {}\n", l.cells);
        s += &format!("m = {:e}\n", l.metallization);
        s += &format!("v = {}\n", q(l.speed, Dimension::Velocity));
        s += &format!("delta = {:e}\n", l.speed_reduction);
        s += &format!("W = {}\n", q(l.aperture, Dimension::Length));
        s += "\n[transmon]\n";
        s += &format!("EJ_max = {}\n", q(t.ej_max, Dimension::Energy));
        s += &format!("EC_pair = {}\n", q(t.ec_pair, Dimension::Energy));
        s += &format!("C_q = {}\n", q(t.c_q, Dimension::Capacitance));
        s += &format!("C_g = {}\n", q(t.c_g, Dimension::Capacitance));
        s += &format!("Gamma1 = {}\n", q(t.gamma1, Dimension::Rate));
        s += &format!("Gamma2 = {}\n", q(t.gamma2, Dimension::Rate));
        s += &format!("ec_convention = \"{convention}\"\n");
        s += "\n[piezo]\n";
        s += &format!(
            "epz_over_eps = {}\n",
            q(self.piezo.epz_over_eps, Dimension::Field)
        );
        s += &format!("rho = {}\n", q(self.piezo.density, Dimension::Density));
        s += "\n[drive]\n";
        s += &format!("Omega = {}\n", q(self.rabi, Dimension::Rate));
        s += "\n[sweep]\n";
        s += &format!(
            "flux = {{ start = {:e}, stop = {:e}, points = {} }}\n",
            self.flux.start, self.flux.stop, self.flux.points
        );
        s += &format!(
            "frequency = {{ start = {}, stop = {}, points = {} }}\n",
            q(self.frequency.start, Dimension::Frequency),
            q(self.frequency.stop, Dimension::Frequency),
            self.frequency.points
        );
        s += &format!(
            "window = [{}, {}]\n",
            q(self.window.0, Dimension::Frequency),
            q(self.window.1, Dimension::Frequency)
        );
        s += "\n[solver]\n";
        s += &format!("kind = \"{}\"\n", self.solver.name());
        s += &format!("n_max = {}\n", self.n_max);
        s += &format!("dimension_cap = {}\n", self.dimension_cap);
        s += "\n[tolerances]\n";
        s += &format!("profile = \"{}\"\n", self.profile.name());
        s
    }

    /// SHA-256 of the canonical form, so key order and unit spelling in the
    /// source file do not matter.
    pub fn hash(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_toml().as_bytes()))
    }
}

type Field = Option<Spanned<Value>>;

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    #[serde(default)]
    lattice: RawLattice,
    #[serde(default)]
    transmon: RawTransmon,
    #[serde(default)]
    piezo: RawPiezo,
    #[serde(default)]
    drive: RawDrive,
    #[serde(default)]
    sweep: RawSweep,
    #[serde(default)]
    solver: RawSolver,
    #[serde(default)]
    tolerances: RawTolerances,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawLattice {
    #[serde(rename = "P")]
    period: Field,
    a: Field,
    #[serde(rename = "N")]
    cells: Field,
    #[serde(rename = "N_p")]
    pairs: Field,
    m: Field,
    v: Field,
    delta: Field,
    #[serde(rename = "W")]
    aperture: Field,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawTransmon {
    #[serde(rename = "EJ_max")]
    ej_max: Field,
    #[serde(rename = "EC_pair")]
    ec_pair: Field,
    #[serde(rename = "C_q")]
    c_q: Field,
    #[serde(rename = "C_g")]
    c_g: Field,
    #[serde(rename = "Gamma1")]
    gamma1: Field,
    #[serde(rename = "Gamma2")]
    gamma2: Field,
    ec_convention: Field,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawPiezo {
    epz_over_eps: Field,
    rho: Field,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawDrive {
    #[serde(rename = "Omega")]
    omega: Field,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    flux: Field,
    frequency: Field,
    window: Field,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawSolver {
    kind: Field,
    n_max: Field,
    dimension_cap: Field,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    profile: Field,
}

/// How a bare value is interpreted.
#[derive(Clone, Copy)]
enum Kind {
    Quantity(Dimension),
    Number,
}

struct Reader<'a> {
    src: &'a str,
}

impl Reader<'_> {
    fn line(&self, span: Range<usize>) -> usize {
        self.src[..span.start.min(self.src.len())]
            .matches('\n')
            .count()
            + 1
    }

    fn err(&self, key: &str, field: &Spanned<Value>, message: impl Into<String>) -> ConfigError {
        ConfigError::Invalid {
            key: key.into(),
            line: Some(self.line(field.span())),
            message: message.into(),
        }
    }

    fn scalar(
        &self,
        key: &str,
        field: &Spanned<Value>,
        value: &Value,
        kind: Kind,
    ) -> Result<f64, ConfigError> {
        match (kind, value) {
            (Kind::Quantity(d), Value::String(s)) => {
                parse_quantity(s, d).map_err(|m| self.err(key, field, m))
            }
            (Kind::Quantity(d), Value::Integer(_) | Value::Float(_)) => Err(self.err(
                key,
                field,
                format!(
                    "a {d} needs an explicit unit, e.g. \"{} {}\"",
                    value,
                    d.canonical_unit()
                ),
            )),
            (Kind::Number, Value::Float(x)) => Ok(*x),
            (Kind::Number, Value::Integer(n)) => Ok(*n as f64),
            (Kind::Number, Value::String(_)) => {
                Err(self.err(key, field, "dimensionless value must be a bare number"))
            }
            _ => Err(self.err(key, field, format!("unexpected value {value}"))),
        }
    }

    fn real(&self, key: &str, field: &Field, kind: Kind, default: f64) -> Result<f64, ConfigError> {
        match field {
            None => Ok(default),
            Some(f) => self.scalar(key, f, f.get_ref(), kind),
        }
    }

    fn count(&self, key: &str, field: &Field, default: usize) -> Result<usize, ConfigError> {
        match field {
            None => Ok(default),
            Some(f) => match f.get_ref() {
                Value::Integer(n) if *n >= 0 => Ok(*n as usize),
                v => Err(self.err(key, f, format!("expected a non-negative integer, got {v}"))),
            },
        }
    }

    fn word<'f>(
        &self,
        key: &str,
        field: &'f Field,
    ) -> Result<Option<(&'f str, &'f Spanned<Value>)>, ConfigError> {
        match field {
            None => Ok(None),
            Some(f) => match f.get_ref() {
                Value::String(s) => Ok(Some((s.as_str(), f))),
                v => Err(self.err(key, f, format!("expected a string, got {v}"))),
            },
        }
    }

    fn grid(
        &self,
        key: &str,
        field: &Field,
        kind: Kind,
        default: Grid,
    ) -> Result<Grid, ConfigError> {
        let Some(f) = field else { return Ok(default) };
        let Value::Table(t) = f.get_ref() else {
            return Err(self.err(key, f, "expected a table { start, stop, points }"));
        };
        if let Some(extra) = t
            .keys()
            .find(|k| !matches!(k.as_str(), "start" | "stop" | "points"))
        {
            return Err(self.err(
                key,
                f,
                format!("unknown key `{extra}` (expected start, stop, points)"),
            ));
        }
        let get = |name: &str, d: f64| {
            t.get(name)
                .map(|v| self.scalar(&format!("{key}.{name}"), f, v, kind))
                .unwrap_or(Ok(d))
        };
        let start = get("start", default.start)?;
        let stop = get("stop", default.stop)?;
        let points = match t.get("points") {
            None => default.points,
            Some(Value::Integer(n)) if *n >= 2 => *n as usize,
            Some(v) => {
                return Err(self.err(
                    &format!("{key}.points"),
                    f,
                    format!("need an integer ≥ 2, got {v}"),
                ))
            }
        };
        if !(stop > start) {
            return Err(self.err(
                key,
                f,
                format!("stop ({stop:e}) must exceed start ({start:e})"),
            ));
        }
        Ok(Grid {
            start,
            stop,
            points,
        })
    }

    fn resolve(&self, raw: &RawConfig) -> Result<Config, ConfigError> {
        let d = Config::default();
        let length = Kind::Quantity(Dimension::Length);
        let rl = &raw.lattice;

        let period = match (&rl.period, &rl.a) {
            (Some(_), Some(a)) => {
                return Err(self.err("lattice.a", a, "give either `a` or `P`, not both"))
            }
            (Some(_), None) => self.real("lattice.P", &rl.period, length, 0.0)?,
            (None, Some(_)) => 0.5 * self.real("lattice.a", &rl.a, length, 0.0)?,
            (None, None) => d.lattice.period,
        };
        let cells = match (&rl.cells, &rl.pairs) {
            (Some(_), Some(p)) => {
                return Err(self.err("lattice.N_p", p, "give either `N` or `N_p`, not both"))
            }
            (Some(_), None) => self.count("lattice.N", &rl.cells, 0)?,
            (None, Some(_)) => 2 * self.count("lattice.N_p", &rl.pairs, 0)?,
            (None, None) => d.lattice.cells,
        };
        let lattice = LatticeSpec {
            period,
            cells,
            metallization: self.real("lattice.m", &rl.m, Kind::Number, d.lattice.metallization)?,
            speed: self.real(
                "lattice.v",
                &rl.v,
                Kind::Quantity(Dimension::Velocity),
                d.lattice.speed,
            )?,
            speed_reduction: self.real(
                "lattice.delta",
                &rl.delta,
                Kind::Number,
                d.lattice.speed_reduction,
            )?,
            aperture: self.real("lattice.W", &rl.aperture, length, d.lattice.aperture)?,
        };
        if cells % 2 == 1 {
            let f = rl
                .cells
                .as_ref()
                .or(rl.pairs.as_ref())
                .expect("odd count comes from the file");
            return Err(self.err(
                "lattice.N",
                f,
                "the transducer needs an even number of stripes",
            ));
        }
        self.check(lattice.validate(), |name| match name {
            "period" => ("lattice.P", rl.period.as_ref().or(rl.a.as_ref())),
            "cells" => ("lattice.N", rl.cells.as_ref().or(rl.pairs.as_ref())),
            "metallization" => ("lattice.m", rl.m.as_ref()),
            "speed" => ("lattice.v", rl.v.as_ref()),
            "speed_reduction" => ("lattice.delta", rl.delta.as_ref()),
            _ => ("lattice.W", rl.aperture.as_ref()),
        })?;

        let rt = &raw.transmon;
        let energy = Kind::Quantity(Dimension::Energy);
        let cap = Kind::Quantity(Dimension::Capacitance);
        let rate = Kind::Quantity(Dimension::Rate);
        let convention = match self.word("transmon.ec_convention", &rt.ec_convention)? {
            None => d.transmon.convention,
            Some(("single-electron", _)) => ChargingConvention::SingleElectron,
            Some(("cooper-pair", _)) => ChargingConvention::CooperPair,
            Some((other, f)) => {
                return Err(self.err(
                    "transmon.ec_convention",
                    f,
                    format!(
                        "unknown convention {other:?} (use \"single-electron\" or \"cooper-pair\")"
                    ),
                ))
            }
        };
        let transmon = TransmonSpec {
            ej_max: self.real("transmon.EJ_max", &rt.ej_max, energy, d.transmon.ej_max)?,
            ec_pair: self.real("transmon.EC_pair", &rt.ec_pair, energy, d.transmon.ec_pair)?,
            c_q: self.real("transmon.C_q", &rt.c_q, cap, d.transmon.c_q)?,
            c_g: self.real("transmon.C_g", &rt.c_g, cap, d.transmon.c_g)?,
            gamma1: self.real("transmon.Gamma1", &rt.gamma1, rate, d.transmon.gamma1)?,
            gamma2: self.real("transmon.Gamma2", &rt.gamma2, rate, d.transmon.gamma2)?,
            convention,
        };
        self.check(transmon.validate(), |name| match name {
            "ej_max" => (
                "transmon.EJ_max",
                rt.ej_max.as_ref().or(rt.ec_pair.as_ref()),
            ),
            "c_q" => ("transmon.C_q", rt.c_q.as_ref().or(rt.c_g.as_ref())),
            "gamma1" => ("transmon.Gamma1", rt.gamma1.as_ref()),
            _ => ("transmon.Gamma2", rt.gamma2.as_ref().or(rt.gamma1.as_ref())),
        })?;

        let rp = &raw.piezo;
        let piezo = PiezoConstants {
            epz_over_eps: self.real(
                "piezo.epz_over_eps",
                &rp.epz_over_eps,
                Kind::Quantity(Dimension::Field),
                d.piezo.epz_over_eps,
            )?,
            density: self.real(
                "piezo.rho",
                &rp.rho,
                Kind::Quantity(Dimension::Density),
                d.piezo.density,
            )?,
        };
        self.check(piezo.validate(), |name| match name {
            "epz_over_eps" => ("piezo.epz_over_eps", rp.epz_over_eps.as_ref()),
            _ => ("piezo.rho", rp.rho.as_ref()),
        })?;

        let rabi = self.real(
            "drive.Omega",
            &raw.drive.omega,
            rate,
            transmon.gamma1 / 20.0,
        )?;
        if !(rabi > 0.0) {
            return Err(self.invalid_at(
                "drive.Omega",
                raw.drive.omega.as_ref(),
                "must be positive",
            ));
        }

        let rs = &raw.sweep;
        let flux = self.grid("sweep.flux", &rs.flux, Kind::Number, d.flux)?;
        let frequency = self.grid(
            "sweep.frequency",
            &rs.frequency,
            Kind::Quantity(Dimension::Frequency),
            d.frequency,
        )?;
        if !(frequency.start > 0.0) {
            return Err(self.invalid_at(
                "sweep.frequency",
                rs.frequency.as_ref(),
                "frequencies must be positive",
            ));
        }
        let window = match &rs.window {
            None => d.window,
            Some(f) => match f.get_ref() {
                Value::Array(v) if v.len() == 2 => {
                    let k = Kind::Quantity(Dimension::Frequency);
                    let lo = self.scalar("sweep.window", f, &v[0], k)?;
                    let hi = self.scalar("sweep.window", f, &v[1], k)?;
                    if !(lo > 0.0 && hi > lo) {
                        return Err(self.err("sweep.window", f, "need 0 < low < high"));
                    }
                    (lo, hi)
                }
                _ => return Err(self.err("sweep.window", f, "expected [low, high]")),
            },
        };

        let rsv = &raw.solver;
        let solver = match self.word("solver.kind", &rsv.kind)? {
            None => d.solver,
            Some((s, f)) => SolverKind::parse(s).ok_or_else(|| {
                self.err(
                    "solver.kind",
                    f,
                    format!("unknown solver {s:?} (use \"semiclassical\" or \"lindblad\")"),
                )
            })?,
        };
        let n_max = self.count("solver.n_max", &rsv.n_max, d.n_max)?;
        if n_max == 0 {
            return Err(self.invalid_at(
                "solver.n_max",
                rsv.n_max.as_ref(),
                "need at least one phonon level",
            ));
        }
        let dimension_cap =
            self.count("solver.dimension_cap", &rsv.dimension_cap, d.dimension_cap)?;

        let profile = match self.word("tolerances.profile", &raw.tolerances.profile)? {
            None => d.profile,
            Some((s, f)) => ToleranceProfile::parse(s).ok_or_else(|| {
                self.err(
                    "tolerances.profile",
                    f,
                    format!("unknown profile {s:?} (use \"strict\" or \"paper\")"),
                )
            })?,
        };

        Ok(Config {
            lattice,
            transmon,
            piezo,
            rabi,
            flux,
            frequency,
            window,
            solver,
            n_max,
            dimension_cap,
            profile,
        })
    }

    fn invalid_at(&self, key: &str, field: Option<&Spanned<Value>>, message: &str) -> ConfigError {
        ConfigError::Invalid {
            key: key.into(),
            line: field.map(|f| self.line(f.span())),
            message: message.into(),
        }
    }

    /// Maps a core parameter error to the config key that set it.
    fn check<'f>(
        &self,
        result: sawqa_core::Result<()>,
        key_of: impl Fn(&str) -> (&'static str, Option<&'f Spanned<Value>>),
    ) -> Result<(), ConfigError> {
        match result {
            Ok(()) => Ok(()),
            Err(Error::InvalidParameter { name, reason }) => {
                let (key, field) = key_of(name);
                Err(self.invalid_at(key, field, &reason))
            }
            Err(e) => Err(ConfigError::Invalid {
                key: "config".into(),
                line: None,
                message: e.to_string(),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_file_is_reference_device() {
        assert_eq!(Config::from_toml("").unwrap(), Config::default());
    }

    #[test]
    fn electrical_period_and_pair_count() {
        let c = Config::from_toml("[lattice]\na = \"0.95 um\"\nN_p = 140\n").unwrap();
        assert_eq!(c.lattice.period, 0.475e-6);
        assert_eq!(c.lattice.cells, 280);
    }

    #[test]
    fn both_period_spellings_rejected_with_line() {
        let err = Config::from_toml("[lattice]\nP = \"0.475 um\"\na = \"0.95 um\"\n").unwrap_err();
        assert!(
            matches!(&err, ConfigError::Invalid { key, line: Some(3), .. } if key == "lattice.a"),
            "{err}"
        );
    }

    #[test]
    fn validation_errors_point_at_the_key() {
        let err = Config::from_toml("[lattice]\n\nm = 1.5\n").unwrap_err();
        assert_eq!(
            err.to_string().split(':').next().unwrap(),
            "line 3, key `lattice.m`"
        );
        let err = Config::from_toml("[transmon]\nGamma2 = \"3 MHz\"\n").unwrap_err();
        assert!(err.to_string().contains("transmon.Gamma2"), "{err}");
    }
}
