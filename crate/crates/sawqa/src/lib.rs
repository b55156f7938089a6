// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Host-side companion to `sawqa-core`: TOML configuration with explicit
//! units, CSV export, run manifests, parallel maps, the acceptance evaluator
//! and the `sawqa` command line.

pub mod cli;
pub mod config;
pub mod export;
pub mod manifest;
pub mod parallel;
pub mod reproduce;
pub mod units;

pub use config::{Config, ConfigError, ToleranceProfile};
