// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Flux rows of a map are independent; they are farmed out to a rayon pool
//! and collected in row order, so the result does not depend on the thread
//! count.

use rayon::prelude::*;
use rayon::ThreadPoolBuilder;

use sawqa_core::spectroscopy::{simulate_row, DeviceAssembly, Solver, SweepSpec, TransmissionMap};
use sawqa_core::{Error, Result};

pub fn simulate_map_parallel(
    device: &DeviceAssembly,
    sweep: &SweepSpec,
    solver: &Solver,
    threads: usize,
) -> Result<TransmissionMap> {
    sweep.validate()?;
    let pool = ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::Numerical(format!("cannot start worker pool: {e}")))?;
    let rows = pool.install(|| {
        (0..sweep.flux.len())
            .into_par_iter()
            .map(|r| simulate_row(device, sweep, r, solver))
            .collect::<Result<Vec<_>>>()
    })?;
    TransmissionMap::from_rows(sweep, device, rows)
}
