// Copyright 2026 The sawqa Authors
// SPDX-License-Identifier: Apache-2.0

//! Flux-tunable transmon: E_J(Φ), transition frequency, charge matrix element.
//!
//! Energies are stored as E/h in Hz. Rates are angular (rad/s).

use alloc::format;
use core::f64::consts::PI;

#[allow(unused_imports)] // float methods come from libm without std
use num_traits::Float as _;

use crate::consts::{ELEMENTARY_CHARGE, PLANCK};
use crate::{Error, Result};

/// Which charging energy enters the transition-frequency law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ChargingConvention {
    /// E_c = e²/2C = E_C/4 (the usual transmon law).
    #[default]
    SingleElectron,
    /// E_C = (2e)²/2C used as is.
    CooperPair,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransmonSpec {
    /// Maximal Josephson energy E_J/h (Hz).
    pub ej_max: f64,
    /// Cooper-pair charging energy E_C/h = (2e)²/(2 C_tot h) (Hz).
    pub ec_pair: f64,
    /// Shunt (transducer) capacitance C_q = C_IDT (F).
    pub c_q: f64,
    /// Capacitance to the transmission line (F).
    pub c_g: f64,
    /// Energy relaxation rate Γ₁ (rad/s).
    pub gamma1: f64,
    /// Coherence decay rate Γ₂ (rad/s).
    pub gamma2: f64,
    pub convention: ChargingConvention,
}

impl Default for TransmonSpec {
    fn default() -> Self {
        TransmonSpec {
            ej_max: 9.6e9,
            ec_pair: 0.78e9,
            c_q: 83e-15,
            c_g: 14e-15,
            gamma1: 2.0 * PI * 8e6,
            gamma2: 2.0 * PI * 11e6,
            convention: ChargingConvention::SingleElectron,
        }
    }
}

impl TransmonSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.ec_pair > 0.0 && self.ej_max > self.ec_pair && self.ej_max.is_finite()) {
            return Err(Error::invalid(
                "ej_max",
                format!(
                    "transmon regime needs E_J,max > E_C > 0 (got {:e} and {:e} Hz)",
                    self.ej_max, self.ec_pair
                ),
            ));
        }
        if !(self.c_q > 0.0) || !(self.c_g >= 0.0) {
            return Err(Error::invalid("c_q", "capacitances must be positive"));
        }
        if !(self.gamma1 > 0.0 && self.gamma1.is_finite()) {
            return Err(Error::invalid(
                "gamma1",
                format!("must be positive, got {}", self.gamma1),
            ));
        }
        if !(self.gamma2 >= 0.5 * self.gamma1) {
            return Err(Error::invalid(
                "gamma2",
                format!("Γ₂ = {} is below Γ₁/2 = {}", self.gamma2, 0.5 * self.gamma1),
            ));
        }
        Ok(())
    }

    /// Pure dephasing Γ_φ = Γ₂ − Γ₁/2.
    pub fn gamma_phi(&self) -> f64 {
        self.gamma2 - 0.5 * self.gamma1
    }

    /// Charging energy (Hz) used by the frequency law.
    pub fn law_charging_energy(&self) -> f64 {
        match self.convention {
            ChargingConvention::SingleElectron => 0.25 * self.ec_pair,
            ChargingConvention::CooperPair => self.ec_pair,
        }
    }
}

/// Reduced flux Φ/Φ₀, canonicalized to [0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FluxBias(f64);

impl FluxBias {
    pub fn new(phi: f64) -> Self {
        let r = phi - phi.floor();
        FluxBias(if r >= 1.0 { 0.0 } else { r })
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// E_J(φ)/h = E_J,max·|cos πφ| (symmetric SQUID).
pub fn ej_at_flux(spec: &TransmonSpec, bias: FluxBias) -> f64 {
    spec.ej_max * (PI * bias.value()).cos().abs()
}

/// Transition frequency sqrt(8 E_c E_J(φ)) − E_c, in Hz.
pub fn qubit_frequency(spec: &TransmonSpec, bias: FluxBias) -> Result<f64> {
    spec.validate()?;
    let ej = ej_at_flux(spec, bias);
    let ec = spec.law_charging_energy();
    if !(ej > 0.25 * spec.ec_pair) || !(ej > ec / 8.0) {
        return Err(Error::Domain(format!(
            "φ = {} leaves the transmon regime (E_J/h = {ej:e} Hz)",
            bias.value()
        )));
    }
    Ok((8.0 * ec * ej).sqrt() - ec)
}

/// Smallest φ in [0, ½] at which the qubit sits at `frequency` (Hz).
pub fn flux_for_frequency(spec: &TransmonSpec, frequency: f64) -> Result<FluxBias> {
    spec.validate()?;
    let ec = spec.law_charging_energy();
    let ej = (frequency + ec).powi(2) / (8.0 * ec);
    let ratio = ej / spec.ej_max;
    if !(frequency > 0.0 && ratio <= 1.0 && ej > 0.25 * spec.ec_pair) {
        return Err(Error::Domain(format!(
            "qubit cannot reach {frequency:e} Hz"
        )));
    }
    Ok(FluxBias::new(ratio.acos() / PI))
}

/// Charge matrix element ξ₀ = (2E_C)^{3/4} E_J(φ)^{1/4} / e in volts, with the
/// Cooper-pair E_C.
pub fn matrix_element_xi0(spec: &TransmonSpec, bias: FluxBias) -> f64 {
    let ec = spec.ec_pair * PLANCK;
    let ej = ej_at_flux(spec, bias) * PLANCK;
    (2.0 * ec).powf(0.75) * ej.powf(0.25) / ELEMENTARY_CHARGE
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn josephson_energy_flux_law() {
        let s = TransmonSpec::default();
        assert_eq!(ej_at_flux(&s, FluxBias::new(0.0)), 9.6e9);
        assert!(ej_at_flux(&s, FluxBias::new(0.5)).abs() < 1e-6);
        assert!((ej_at_flux(&s, FluxBias::new(1.0 / 3.0)) - 4.8e9).abs() < 1e-3);
    }

    #[test]
    fn flux_is_periodic_and_canonical() {
        assert_eq!(FluxBias::new(-0.25).value(), 0.75);
        assert_eq!(FluxBias::new(2.0).value(), 0.0);
        assert!(FluxBias::new(-1e-18).value() < 1.0);
    }

    #[test]
    fn maximum_frequency() {
        // sqrt(8 · 0.195 · 9.6) − 0.195 GHz
        let f = qubit_frequency(&TransmonSpec::default(), FluxBias::new(0.0)).unwrap();
        let expect = (8.0f64 * 0.195 * 9.6).sqrt() * 1e9 - 0.195e9;
        assert!((f - expect).abs() < 1.0);
        assert!((f - 3.67e9).abs() < 0.01e9);
    }

    #[test]
    fn full_frustration_is_outside_transmon_regime() {
        assert!(matches!(
            qubit_frequency(&TransmonSpec::default(), FluxBias::new(0.5)),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn dephasing_from_reference_rates() {
        let s = TransmonSpec::default();
        assert!((s.gamma_phi() / (2.0 * PI) - 7e6).abs() < 1e-6);
    }

    #[test]
    fn flux_inversion_roundtrip() {
        let s = TransmonSpec::default();
        let phi = flux_for_frequency(&s, 3.0e9).unwrap();
        assert!((qubit_frequency(&s, phi).unwrap() - 3.0e9).abs() < 1e-3);
    }

    #[test]
    fn xi0_regression_and_scaling() {
        let s = TransmonSpec::default();
        let xi = matrix_element_xi0(&s, FluxBias::new(0.0));
        // (2·0.78 GHz·h)^{3/4} (9.6 GHz·h)^{1/4} / e
        assert!((xi - 1.016_147_8e-5).abs() < 1e-11, "{xi}");
        let mut s4 = s;
        s4.ej_max *= 4.0;
        let ratio = matrix_element_xi0(&s4, FluxBias::new(0.0)) / xi;
        assert!((ratio - 2f64.sqrt()).abs() < 1e-12);
        assert!(matrix_element_xi0(&s, FluxBias::new(0.5)) < 1e-8);
    }
}
