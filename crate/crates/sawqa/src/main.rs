// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use std::process::ExitCode;

use clap::Parser;

use sawqa::cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) => {
            if !outcome.summary.is_empty() {
                println!("{}", outcome.summary);
            }
            ExitCode::from(outcome.exit_code())
        }
        Err(failure) => {
            eprintln!("sawqa {}: {failure}", cli.command.name());
            ExitCode::from(failure.code)
        }
    }
}
