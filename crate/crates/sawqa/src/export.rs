// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! CSV tables. Reals are written with 12 significant digits in exponent form,
//! so the output does not depend on locale or platform formatting.

use std::fs::File;
use std::io::Write;
use std::path::Path;

use sawqa_core::lattice::DispersionBranch;
use sawqa_core::qnm::QuasiNormalMode;
use sawqa_core::spectroscopy::{
    AnticrossingFit, CoupledMode, DipQuality, TransmissionFit, TransmissionMap,
};
use sawqa_core::transmon::{qubit_frequency, FluxBias, TransmonSpec};
use sawqa_core::Complex64;

/// 12 significant digits.
pub fn num(x: f64) -> String {
    format!("{x:.11e}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(std::io::BufWriter::new(File::create(path)?));
        w.write_record(&self.header)?;
        for r in &self.rows {
            w.write_record(r)?;
        }
        w.flush()?;
        let mut inner = w.into_inner().map_err(|e| e.into_error())?;
        inner.flush()
    }

    pub fn read(path: &Path) -> Result<Self, String> {
        let mut r = csv::Reader::from_path(path).map_err(|e| format!("{}: {e}", path.display()))?;
        let header = r
            .headers()
            .map_err(|e| format!("{}: {e}", path.display()))?
            .iter()
            .map(String::from)
            .collect();
        let mut rows = Vec::new();
        for rec in r.records() {
            let rec = rec.map_err(|e| format!("{}: {e}", path.display()))?;
            rows.push(rec.iter().map(String::from).collect());
        }
        Ok(Table { header, rows })
    }

    /// Numeric column by header name.
    pub fn column(&self, name: &str) -> Result<Vec<f64>, String> {
        let k = self
            .header
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| format!("no column `{name}`"))?;
        self.rows
            .iter()
            .enumerate()
            .map(|(n, r)| {
                r[k].trim()
                    .parse::<f64>()
                    .map_err(|_| format!("row {}: `{name}` = {:?} is not a number", n + 2, r[k]))
            })
            .collect()
    }
}

pub fn dispersion_table(branches: &[DispersionBranch]) -> Table {
    let mut t = Table::new(&["branch", "k_rad_per_m", "f_Hz"]);
    for b in branches {
        let label = format!("{:?}", b.label).to_lowercase();
        for &(k, f) in &b.samples {
            t.push(vec![label.clone(), num(k), num(f)]);
        }
    }
    t
}

/// Longitudinal modes with both quality-factor definitions.
pub fn qnm_table(modes: &[QuasiNormalMode], energy_q: &[f64]) -> Table {
    let mut t = Table::new(&[
        "i",
        "f_Hz",
        "im_omega_rad_per_s",
        "Q",
        "Q_energy",
        "kx_rad_per_m",
    ]);
    for (m, qe) in modes.iter().zip(energy_q) {
        t.push(vec![
            m.index.to_string(),
            num(m.frequency()),
            num(m.omega.im),
            num(m.quality),
            num(*qe),
            num(m.kx),
        ]);
    }
    t
}

pub fn mode_table(modes: &[&CoupledMode]) -> Table {
    let mut t = Table::new(&["i", "j", "f_Hz", "Q", "kx_rad_per_m"]);
    for m in modes {
        t.push(vec![
            m.i.to_string(),
            m.j.to_string(),
            num(m.frequency),
            num(m.quality),
            num(m.kx),
        ]);
    }
    t
}

pub fn field_table(mode: &QuasiNormalMode) -> Table {
    let mut t = Table::new(&["x_m", "re_A", "im_A"]);
    for (k, a) in mode.field.iter().enumerate() {
        t.push(vec![num(k as f64 * mode.dx), num(a.re), num(a.im)]);
    }
    t
}

pub fn coupling_table(modes: &[CoupledMode]) -> Table {
    let mut t = Table::new(&[
        "i",
        "j",
        "f_Hz",
        "V_V",
        "g_rad_per_s",
        "g_over_2pi_Hz",
        "flux",
    ]);
    for m in modes {
        t.push(vec![
            m.i.to_string(),
            m.j.to_string(),
            num(m.frequency),
            num(m.potential),
            num(m.g),
            num(m.g / (2.0 * std::f64::consts::PI)),
            num(m.bias.value()),
        ]);
    }
    t
}

fn response(z: Complex64) -> [String; 4] {
    [num(z.re), num(z.im), num(z.norm()), num(z.arg())]
}

pub fn trace_table(freqs: &[f64], t: &[Complex64]) -> Table {
    let mut tab = Table::new(&["f_Hz", "re_t", "im_t", "abs_t", "arg_t"]);
    for (f, z) in freqs.iter().zip(t) {
        let mut row = vec![num(*f)];
        row.extend(response(*z));
        tab.push(row);
    }
    tab
}

/// Long format, flux-major. `phi` is Φ/Φ₀.
pub fn map_table(map: &TransmissionMap) -> Table {
    let mut tab = Table::new(&["phi", "f_Hz", "re_t", "im_t", "abs_t", "arg_t"]);
    for r in 0..map.rows() {
        for (c, f) in map.frequency.iter().enumerate() {
            let mut row = vec![num(map.flux[r]), num(*f)];
            row.extend(response(map.at(r, c)));
            tab.push(row);
        }
    }
    tab
}

pub fn trace_from_table(tab: &Table) -> Result<(Vec<f64>, Vec<Complex64>), String> {
    let f = tab.column("f_Hz")?;
    let re = tab.column("re_t")?;
    let im = tab.column("im_t")?;
    Ok((
        f,
        re.into_iter()
            .zip(im)
            .map(|(a, b)| Complex64::new(a, b))
            .collect(),
    ))
}

/// Reads a map written by [`map_table`]. The bare atom frequency is not
/// stored, so it is recomputed from `transmon`.
pub fn map_from_table(tab: &Table, transmon: &TransmonSpec) -> Result<TransmissionMap, String> {
    let flux_col = tab.column("phi")?;
    let f_col = tab.column("f_Hz")?;
    let re = tab.column("re_t")?;
    let im = tab.column("im_t")?;
    let cols = f_col
        .iter()
        .skip(1)
        .position(|&f| f <= f_col[0])
        .map_or(f_col.len(), |p| p + 1);
    if cols < 2 || f_col.len() % cols != 0 {
        return Err(format!(
            "{} rows do not form a rectangular flux × frequency grid",
            f_col.len()
        ));
    }
    let rows = f_col.len() / cols;
    let frequency = f_col[..cols].to_vec();
    for r in 0..rows {
        if f_col[r * cols..(r + 1) * cols] != frequency[..]
            || flux_col[r * cols..(r + 1) * cols]
                .iter()
                .any(|&p| p != flux_col[r * cols])
        {
            return Err(format!(
                "map row {r} does not repeat the frequency grid at one flux"
            ));
        }
    }
    let flux: Vec<f64> = (0..rows).map(|r| flux_col[r * cols]).collect();
    let atom_frequency = flux
        .iter()
        .map(|&p| qubit_frequency(transmon, FluxBias::new(p)))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| format!("phi column: {e}"))?;
    Ok(TransmissionMap {
        flux,
        frequency,
        atom_frequency,
        t: re
            .into_iter()
            .zip(im)
            .map(|(a, b)| Complex64::new(a, b))
            .collect(),
    })
}

pub fn transmission_fit_table(fit: &TransmissionFit) -> Table {
    let l = &fit.lorentzian;
    let mut t = Table::new(&[
        "center_Hz",
        "hwhm_Hz",
        "depth",
        "baseline",
        "gamma1_rad_per_s",
        "gamma2_rad_per_s",
        "residual_norm",
    ]);
    t.push(vec![
        num(l.center),
        num(l.half_width),
        num(l.depth),
        num(l.baseline),
        num(fit.gamma1),
        num(fit.gamma2),
        num(l.residual_norm),
    ]);
    t
}

pub fn dip_table(dips: &[DipQuality]) -> Table {
    let mut t = Table::new(&["center_Hz", "hwhm_Hz", "depth", "baseline", "Q"]);
    for d in dips {
        t.push(vec![
            num(d.fit.center),
            num(d.fit.half_width),
            num(d.fit.depth),
            num(d.fit.baseline),
            num(d.quality),
        ]);
    }
    t
}

pub fn anticrossing_table(fits: &[AnticrossingFit]) -> Table {
    let mut t = Table::new(&[
        "crossing_flux",
        "f_mode_Hz",
        "g_rad_per_s",
        "g_over_2pi_Hz",
        "rows",
        "residual_norm",
    ]);
    for a in fits {
        t.push(vec![
            num(a.crossing_flux),
            num(a.mode_frequency),
            num(a.g),
            num(a.g / (2.0 * std::f64::consts::PI)),
            a.rows.to_string(),
            num(a.residual_norm),
        ]);
    }
    t
}

/// Plain-text file, used for the acceptance summary.
pub fn write_text(path: &Path, text: &str) -> std::io::Result<()> {
    File::create(path)?.write_all(text.as_bytes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(num(3.262e9), "3.26200000000e9");
        assert_eq!(num(-1.0 / 3.0), "-3.33333333333e-1");
        let x = 0.123456789012345;
        assert!((num(x).parse::<f64>().unwrap() / x - 1.0).abs() < 5e-12);
    }

    #[test]
    fn map_survives_the_long_format() {
        let transmon = TransmonSpec::default();
        let flux = vec![0.1, 0.2, 0.3];
        let atom_frequency = flux
            .iter()
            .map(|&p| qubit_frequency(&transmon, FluxBias::new(p)).unwrap())
            .collect();
        let map = TransmissionMap {
            flux,
            frequency: vec![1.0, 2.0],
            atom_frequency,
            t: (0..6)
                .map(|k| Complex64::new(k as f64, -(k as f64)))
                .collect(),
        };
        let tab = map_table(&map);
        let tab = Table {
            header: tab.header,
            rows: tab.rows,
        };
        assert_eq!(map_from_table(&tab, &transmon).unwrap(), map);
    }
}
