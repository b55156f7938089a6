// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Acceptance criteria on the reference device with strict tolerances.
//! Prints one PASS/FAIL line per criterion followed by its checks, and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;

use sawqa::reproduce::Reproduction;
use sawqa::Config;

fn main() -> ExitCode {
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let reproduction = Reproduction::new(Config::default(), threads);
    let mut failed = Vec::new();
    for id in 1..=8 {
        let report = reproduction.criterion(id);
        print!("{report}");
        if !report.passed() {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 8 criteria passed");
        ExitCode::SUCCESS
    } else {
        println!(
            "acceptance: {} of 8 criteria failed: {failed:?}",
            failed.len()
        );
        ExitCode::FAILURE
    }
}
