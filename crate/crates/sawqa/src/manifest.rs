// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use chrono::{DateTime, SecondsFormat, Utc};
use serde::Serialize;

use crate::config::{Config, SolverKind};

#[derive(Debug, Clone, Serialize)]
pub struct Derived {
    pub length_m: f64,
    pub electrical_period_m: f64,
    pub center_frequency_hz: f64,
    pub effective_index: f64,
}

impl Derived {
    pub fn of(config: &Config) -> Self {
        let l = &config.lattice;
        Derived {
            length_m: l.length(),
            electrical_period_m: l.electrical_period(),
            center_frequency_hz: l.center_frequency(),
            effective_index: l.effective_index(),
        }
    }
}

/// Written as `manifest.json` next to every set of outputs.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: String,
    pub solver: String,
    pub threads: usize,
    pub config_sha256: String,
    /// Resolved configuration in canonical TOML.
    pub config: String,
    pub derived: Derived,
    pub outputs: Vec<String>,
    pub started: String,
    pub finished: String,
}

impl RunManifest {
    pub fn new(command: &str, config: &Config, threads: usize, started: DateTime<Utc>) -> Self {
        RunManifest {
            tool: env!("CARGO_PKG_NAME"),
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            solver: config.solver.name().to_string(),
            threads,
            config_sha256: config.hash(),
            config: config.to_toml(),
            derived: Derived::of(config),
            outputs: Vec::new(),
            started: started.to_rfc3339_opts(SecondsFormat::Millis, true),
            finished: String::new(),
        }
    }

    pub fn write(mut self, dir: &Path) -> std::io::Result<()> {
        self.finished = Utc::now().to_rfc3339_opts(SecondsFormat::Millis, true);
        let text = serde_json::to_string_pretty(&self).map_err(std::io::Error::other)?;
        std::fs::write(dir.join("manifest.json"), text + "\n")
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GridRecord {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

/// `map.json`, written beside `map.csv`. Holds no timestamps, so repeated runs
/// give identical bytes.
#[derive(Debug, Clone, Serialize)]
pub struct MapSidecar {
    pub config_sha256: String,
    pub solver: String,
    pub n_max: Option<usize>,
    pub rabi_rad_per_s: f64,
    /// Φ/Φ₀.
    pub phi: GridRecord,
    pub f_hz: GridRecord,
    pub tolerance_profile: String,
    pub columns: [&'static str; 6],
}

impl MapSidecar {
    pub fn new(config: &Config) -> Self {
        let grid = |g: &crate::config::Grid| GridRecord {
            start: g.start,
            stop: g.stop,
            points: g.points,
        };
        MapSidecar {
            config_sha256: config.hash(),
            solver: config.solver.name().to_string(),
            n_max: (config.solver == SolverKind::Lindblad).then_some(config.n_max),
            rabi_rad_per_s: config.rabi,
            phi: grid(&config.flux),
            f_hz: grid(&config.frequency),
            tolerance_profile: config.profile.name().to_string(),
            columns: ["phi", "f_Hz", "re_t", "im_t", "abs_t", "arg_t"],
        }
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let text = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(path, text + "\n")
    }
}
