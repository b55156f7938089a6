// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Quantities written as `"<number> <unit>"` strings.
//!
//! Every dimensional config value carries its unit. Values are converted to
//! SI on input; rates given in a hertz unit are read as Γ/2π and converted to
//! rad/s.

use std::f64::consts::PI;
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dimension {
    Length,
    Frequency,
    /// Energy expressed as E/h.
    Energy,
    /// Angular rate (rad/s).
    Rate,
    Capacitance,
    Velocity,
    Density,
    /// Electric field per unit strain, e_pz/ε.
    Field,
}

impl Dimension {
    /// Unit used when writing resolved values back out.
    pub fn canonical_unit(self) -> &'static str {
        match self {
            Dimension::Length => "m",
            Dimension::Frequency | Dimension::Energy => "Hz",
            Dimension::Rate => "rad/s",
            Dimension::Capacitance => "F",
            Dimension::Velocity => "m/s",
            Dimension::Density => "kg/m^3",
            Dimension::Field => "V/m",
        }
    }

    /// (unit, power of ten, factor). The power of ten is applied to the
    /// decimal text, so "0.95 um" parses exactly as `0.95e-6`.
    fn units(self) -> &'static [(&'static str, i32, f64)] {
        const HZ: &[(&str, i32, f64)] = &[
            ("Hz", 0, 1.0),
            ("kHz", 3, 1.0),
            ("MHz", 6, 1.0),
            ("GHz", 9, 1.0),
        ];
        const TWO_PI: f64 = 2.0 * PI;
        match self {
            Dimension::Length => &[
                ("m", 0, 1.0),
                ("mm", -3, 1.0),
                ("um", -6, 1.0),
                ("µm", -6, 1.0),
                ("nm", -9, 1.0),
            ],
            Dimension::Frequency | Dimension::Energy => HZ,
            Dimension::Rate => &[
                ("rad/s", 0, 1.0),
                ("1/s", 0, 1.0),
                ("Hz", 0, TWO_PI),
                ("kHz", 3, TWO_PI),
                ("MHz", 6, TWO_PI),
                ("GHz", 9, TWO_PI),
            ],
            Dimension::Capacitance => &[
                ("F", 0, 1.0),
                ("pF", -12, 1.0),
                ("fF", -15, 1.0),
                ("aF", -18, 1.0),
            ],
            Dimension::Velocity => &[("m/s", 0, 1.0), ("km/s", 3, 1.0)],
            Dimension::Density => &[("kg/m^3", 0, 1.0), ("g/cm^3", 3, 1.0)],
            Dimension::Field => &[("V/m", 0, 1.0), ("V/um", 6, 1.0), ("V/nm", 9, 1.0)],
        }
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Dimension::Length => "length",
            Dimension::Frequency => "frequency",
            Dimension::Energy => "energy (E/h)",
            Dimension::Rate => "rate",
            Dimension::Capacitance => "capacitance",
            Dimension::Velocity => "velocity",
            Dimension::Density => "density",
            Dimension::Field => "piezoelectric field",
        };
        f.write_str(s)
    }
}

/// Parses `"<number> <unit>"` into SI.
pub fn parse_quantity(text: &str, dim: Dimension) -> Result<f64, String> {
    let mut parts = text.split_whitespace();
    let (Some(num), Some(unit), None) = (parts.next(), parts.next(), parts.next()) else {
        return Err(format!(
            "expected \"<number> <unit>\" for a {dim}, got {text:?}"
        ));
    };
    let Some(&(_, pow, factor)) = dim.units().iter().find(|(u, ..)| *u == unit) else {
        let allowed: Vec<&str> = dim.units().iter().map(|(u, ..)| *u).collect();
        return Err(format!(
            "unit {unit:?} is not a {dim} unit (use one of {})",
            allowed.join(", ")
        ));
    };
    let bad = || format!("{num:?} is not a number");
    let (mantissa, exp) = match num.find(['e', 'E']) {
        Some(k) => (&num[..k], num[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (num, 0),
    };
    if mantissa.is_empty()
        || !mantissa
            .chars()
            .all(|c| c.is_ascii_digit() || "+-.".contains(c))
    {
        return Err(bad());
    }
    let value: f64 = format!("{mantissa}e{}", exp.saturating_add(pow))
        .parse()
        .map_err(|_| bad())?;
    if !value.is_finite() {
        return Err(format!("{num:?} is not finite"));
    }
    Ok(value * factor)
}

/// Writes an SI value with its canonical unit, using the shortest text that
/// parses back to the same f64.
pub fn format_quantity(value: f64, dim: Dimension) -> String {
    format!("{value:e} {}", dim.canonical_unit())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scales_to_si() {
        assert_eq!(
            parse_quantity("0.95 um", Dimension::Length).unwrap(),
            0.95e-6
        );
        assert_eq!(parse_quantity("9.6 GHz", Dimension::Energy).unwrap(), 9.6e9);
        assert_eq!(
            parse_quantity("83 fF", Dimension::Capacitance).unwrap(),
            83e-15
        );
        assert_eq!(
            parse_quantity("8 MHz", Dimension::Rate).unwrap(),
            2.0 * PI * 8e6
        );
        assert_eq!(parse_quantity("5e7 rad/s", Dimension::Rate).unwrap(), 5e7);
        assert_eq!(
            parse_quantity("3.16 km/s", Dimension::Velocity).unwrap(),
            3160.0
        );
    }

    #[test]
    fn rejects_wrong_or_missing_units() {
        assert!(parse_quantity("3 GHz", Dimension::Length)
            .unwrap_err()
            .contains("not a length unit"));
        assert!(parse_quantity("0.95e-6", Dimension::Length).is_err());
        assert!(parse_quantity("abc m", Dimension::Length).is_err());
        assert!(parse_quantity("inf m", Dimension::Length).is_err());
    }

    #[test]
    fn canonical_text_round_trips() {
        for (v, d) in [
            (0.475e-6, Dimension::Length),
            (2.0 * PI * 11e6, Dimension::Rate),
            (1.6e9, Dimension::Field),
        ] {
            assert_eq!(parse_quantity(&format_quantity(v, d), d).unwrap(), v);
        }
    }
}
