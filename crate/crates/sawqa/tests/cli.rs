// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

use std::path::Path;

use clap::Parser;

use sawqa::cli::{run, Cli, Outcome, EXIT_CONFIG, EXIT_NUMERICAL, EXIT_OK};
use sawqa::export::Table;

const SMALL_MAP: &str = r#"
[sweep]
flux = { start = 0.195, stop = 0.205, points = 5 }
frequency = { start = "3.25 GHz", stop = "3.28 GHz", points = 21 }
"#;

fn sawqa(dir: &Path, config: Option<&str>, args: &[&str]) -> Result<Outcome, u8> {
    let mut argv = vec!["sawqa".to_string(), "--threads".into(), "2".into()];
    argv.extend(["--out".to_string(), dir.display().to_string()]);
    if let Some(text) = config {
        let path = dir.join("run.toml");
        std::fs::write(&path, text).unwrap();
        argv.extend(["--config".to_string(), path.display().to_string()]);
    }
    argv.extend(args.iter().map(|s| s.to_string()));
    run(&Cli::parse_from(argv)).map_err(|f| {
        eprintln!("{f}");
        f.code
    })
}

fn read(path: &Path) -> Vec<u8> {
    std::fs::read(path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn map_output_is_byte_identical_across_runs_and_threads() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    sawqa(a.path(), Some(SMALL_MAP), &["map"]).unwrap();
    let toml = a.path().join("run.toml");
    let argv = [
        "sawqa",
        "--threads",
        "1",
        "--out",
        b.path().to_str().unwrap(),
        "--config",
        toml.to_str().unwrap(),
        "map",
    ];
    run(&Cli::parse_from(argv)).unwrap();
    for f in ["map.csv", "map.json"] {
        assert_eq!(read(&a.path().join(f)), read(&b.path().join(f)), "{f}");
    }
    let tab = Table::read(&a.path().join("map.csv")).unwrap();
    assert_eq!(
        tab.header,
        ["phi", "f_Hz", "re_t", "im_t", "abs_t", "arg_t"]
    );
    assert_eq!(tab.rows.len(), 5 * 21);
}

#[test]
fn manifest_records_config_hash_and_outputs() {
    let dir = tempfile::tempdir().unwrap();
    sawqa(dir.path(), Some(SMALL_MAP), &["map"]).unwrap();
    let text = String::from_utf8(read(&dir.path().join("manifest.json"))).unwrap();
    let json: serde_json::Value = serde_json::from_str(&text).unwrap();
    let config = sawqa::Config::from_toml(SMALL_MAP).unwrap();
    assert_eq!(json["config_sha256"], config.hash());
    assert_eq!(json["command"], "map");
    assert_eq!(json["outputs"][0], "map.csv");
    assert!(json["config"].as_str().unwrap().contains("[lattice]"));
}

#[test]
fn dispersion_ends_on_the_band_edges() {
    let dir = tempfile::tempdir().unwrap();
    sawqa(dir.path(), None, &["dispersion", "--points", "50"]).unwrap();
    let d = Table::read(&dir.path().join("dispersion.csv")).unwrap();
    let gap = Table::read(&dir.path().join("band_gap.csv")).unwrap();
    let f = d.column("f_Hz").unwrap();
    assert_eq!(f.len(), 100);
    assert_eq!(f[49], gap.column("f_low_Hz").unwrap()[0]);
    assert_eq!(f[99], gap.column("f_high_Hz").unwrap()[0]);
}

#[test]
fn modes_and_couplings_tables() {
    let dir = tempfile::tempdir().unwrap();
    sawqa(dir.path(), None, &["modes"]).unwrap();
    let modes = Table::read(&dir.path().join("modes.csv")).unwrap();
    assert_eq!(modes.header, ["i", "j", "f_Hz", "Q", "kx_rad_per_m"]);
    let i = modes.column("i").unwrap();
    let j = modes.column("j").unwrap();
    assert!(
        i.iter().all(|&i| i % 2.0 == 0.0),
        "odd-i modes are uncoupled"
    );
    assert!(
        j.iter().all(|&j| j % 2.0 == 1.0),
        "even-j modes are uncoupled"
    );
    assert!(dir.path().join("fields/field_i0.csv").exists());

    sawqa(dir.path(), None, &["couplings"]).unwrap();
    let c = Table::read(&dir.path().join("couplings.csv")).unwrap();
    assert!(c.header.iter().any(|h| h == "g_over_2pi_Hz"));
}

#[test]
fn reingested_trace_gives_the_same_fit() {
    // Atom at the sweet spot, above the phonon modes.
    let config = r#"
[sweep]
frequency = { start = "3.55 GHz", stop = "3.80 GHz", points = 401 }
"#;
    let dir = tempfile::tempdir().unwrap();
    sawqa(dir.path(), Some(config), &["trace", "--flux", "0"]).unwrap();
    sawqa(dir.path(), Some(config), &["fit-lorentzian", "--flux", "0"]).unwrap();
    let direct = Table::read(&dir.path().join("lorentzian_fit.csv")).unwrap();
    let trace = dir.path().join("trace.csv").display().to_string();
    sawqa(
        dir.path(),
        Some(config),
        &["fit-lorentzian", "--input", &trace],
    )
    .unwrap();
    let again = Table::read(&dir.path().join("lorentzian_fit.csv")).unwrap();
    assert_eq!(direct.header, again.header);
    for col in &direct.header {
        let (x, y) = (
            direct.column(col).unwrap()[0],
            again.column(col).unwrap()[0],
        );
        assert!(
            (x - y).abs() <= 1e-8 * x.abs().max(1.0),
            "{col}: {x} vs {y}"
        );
    }
}

#[test]
fn fit_q_reads_a_trace_column() {
    let dir = tempfile::tempdir().unwrap();
    let mut tab = Table::new(&["f_Hz", "abs_t"]);
    let (f0, q) = (3.262e9, 1040.0);
    for k in 0..2001 {
        let f = 3.23e9 + 35e3 * k as f64;
        let x = (f - f0) / (f0 / (2.0 * q));
        tab.push(vec![
            format!("{f:e}"),
            format!("{:e}", 1.0 - 0.4 / (1.0 + x * x)),
        ]);
    }
    let input = dir.path().join("dips.csv");
    tab.write(&input).unwrap();
    let out = sawqa(
        dir.path(),
        None,
        &["fit-q", "--input", input.to_str().unwrap()],
    )
    .unwrap();
    assert_eq!(out.exit_code(), EXIT_OK);
    let fits = Table::read(&dir.path().join("dip_fits.csv")).unwrap();
    let qs = fits.column("Q").unwrap();
    assert_eq!(qs.len(), 1);
    assert!((qs[0] / q - 1.0).abs() < 0.05, "{}", qs[0]);
}

#[test]
fn invalid_config_exits_with_config_code() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        sawqa(dir.path(), Some("[lattice]\nm = 2\n"), &["modes"]).unwrap_err(),
        EXIT_CONFIG
    );
    assert_eq!(
        sawqa(dir.path(), Some("[lattice\n"), &["modes"]).unwrap_err(),
        EXIT_CONFIG
    );
    let missing = dir.path().join("absent.csv");
    assert_eq!(
        sawqa(
            dir.path(),
            None,
            &["fit-q", "--input", missing.to_str().unwrap()]
        )
        .unwrap_err(),
        EXIT_CONFIG
    );
}

#[test]
fn oversized_hilbert_space_exits_with_numerical_code() {
    let config = r#"
[solver]
kind = "lindblad"
n_max = 3
dimension_cap = 8

[sweep]
frequency = { start = "3.25 GHz", stop = "3.28 GHz", points = 3 }
"#;
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        sawqa(dir.path(), Some(config), &["trace", "--flux", "0.2"]).unwrap_err(),
        EXIT_NUMERICAL
    );
}
