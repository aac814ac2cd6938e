//! Unit system: nanometres, picoseconds and milli-electronvolts.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduced Planck constant in meV·ps.
pub const HBAR: f64 = 0.6582119569;

/// ħ²/mₑ in meV·nm² for the bare electron mass.
pub const HBAR2_OVER_ME: f64 = 76.19964;

/// InSb conduction-band mass in units of mₑ.
pub const INSB_MASS_RATIO: f64 = 0.014;

/// Period of the confinement oscillator and of the resonant drive, in ps.
pub const DESIGN_PERIOD: f64 = 5.5;

/// Amplitude of γ₃D|e|E_y0 used by the presets, in meV·nm.
pub const DESIGN_GAMMA_E: f64 = 40.0;

/// Material and drive constants shared by every module.
///
/// The effective mass enters only through ħ²/m, which keeps kinetic energies
/// in meV for wavevectors in nm⁻¹.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhysParams {
    #[serde(rename = "hbar_mev_ps")]
    pub hbar: f64,
    #[serde(rename = "hbar2_over_m_mev_nm2")]
    pub hbar2_over_m: f64,
    #[serde(rename = "gamma_e0_mev_nm")]
    pub gamma_e_amplitude: f64,
    #[serde(rename = "omega0_rad_per_ps")]
    pub omega0: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        Self {
            hbar: HBAR,
            hbar2_over_m: HBAR2_OVER_ME / INSB_MASS_RATIO,
            gamma_e_amplitude: DESIGN_GAMMA_E,
            omega0: 2.0 * PI / DESIGN_PERIOD,
        }
    }
}

impl PhysParams {
    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("hbar_mev_ps", self.hbar),
            ("hbar2_over_m_mev_nm2", self.hbar2_over_m),
            ("gamma_e0_mev_nm", self.gamma_e_amplitude),
            ("omega0_rad_per_ps", self.omega0),
        ];
        for (name, v) in fields {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::param(name, format!("must be finite and > 0, got {v}")));
            }
        }
        Ok(())
    }

    pub fn period(&self) -> f64 {
        2.0 * PI / self.omega0
    }

    /// ħω₀ in meV.
    pub fn hbar_omega(&self) -> f64 {
        self.hbar * self.omega0
    }

    /// mω₀² in meV/nm².
    pub fn m_omega2(&self) -> f64 {
        let hw = self.hbar_omega();
        hw * hw / self.hbar2_over_m
    }

    /// Oscillator length √(ħ/mω₀) in nm.
    pub fn oscillator_length(&self) -> f64 {
        (self.hbar2_over_m / self.hbar_omega()).sqrt()
    }

    /// √(2ħ/mω₀): converts Re α into a position in nm.
    pub fn position_scale(&self) -> f64 {
        std::f64::consts::SQRT_2 * self.oscillator_length()
    }

    /// Effective mass in meV·ps²/nm².
    pub fn mass(&self) -> f64 {
        self.hbar * self.hbar / self.hbar2_over_m
    }
}
