//! Gate-defined potential landscape: longitudinal confinement, the lateral
//! field that sets the Rashba coupling, and the separating barrier.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::units::PhysParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfinementForm {
    PureParabola,
    /// `E_sat·(1 − exp(−x²/2x_c²))` with `E_sat = mω₀²x_c²`.
    SaturatingWell,
}

/// Confinement along the wire.
///
/// The saturating well reproduces the harmonic trap near the centre and
/// flattens out at distances comparable to `saturation_scale`, which is what
/// stalls the amplitude growth at large excursions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfinementModel {
    pub form: ConfinementForm,
    #[serde(rename = "omega0_rad_per_ps")]
    pub omega0: f64,
    #[serde(rename = "saturation_scale_nm")]
    pub saturation_scale: f64,
}

impl ConfinementModel {
    pub fn parabola(omega0: f64) -> Self {
        Self { form: ConfinementForm::PureParabola, omega0, saturation_scale: DEFAULT_SATURATION_SCALE }
    }

    pub fn saturating(omega0: f64, saturation_scale: f64) -> Self {
        Self { form: ConfinementForm::SaturatingWell, omega0, saturation_scale }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega0.is_finite() && self.omega0 > 0.0) {
            return Err(Error::param("confinement.omega0_rad_per_ps", "must be > 0"));
        }
        if self.form == ConfinementForm::SaturatingWell
            && !(self.saturation_scale.is_finite() && self.saturation_scale > 0.0)
        {
            return Err(Error::param("confinement.saturation_scale_nm", "must be > 0"));
        }
        Ok(())
    }

    /// mω₀² for this model's frequency, meV/nm².
    fn m_omega2(&self, params: &PhysParams) -> f64 {
        let hw = params.hbar * self.omega0;
        hw * hw / params.hbar2_over_m
    }

    /// u(x) in meV.
    pub fn energy(&self, x: f64, params: &PhysParams) -> f64 {
        let k = self.m_omega2(params);
        match self.form {
            ConfinementForm::PureParabola => 0.5 * k * x * x,
            ConfinementForm::SaturatingWell => {
                let xc = self.saturation_scale;
                let e_sat = k * xc * xc;
                -e_sat * (-x * x / (2.0 * xc * xc)).exp_m1()
            }
        }
    }
}

/// Default x_c of the saturating well, nm.
pub const DEFAULT_SATURATION_SCALE: f64 = 450.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DriveMode {
    Oscillating,
    Constant,
    Off,
}

/// Time dependence of γ₃D|e|E_y(t).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DriveProtocol {
    pub mode: DriveMode,
    #[serde(rename = "gamma_e0_mev_nm")]
    pub gamma_e0: f64,
    #[serde(rename = "omega_rad_per_ps")]
    pub omega: f64,
    #[serde(rename = "phase_rad", default)]
    pub phase: f64,
    #[serde(rename = "t_on_ps", default)]
    pub t_on: f64,
    #[serde(rename = "t_off_ps", default, skip_serializing_if = "Option::is_none")]
    pub t_off: Option<f64>,
    /// Set when the drive frequency is deliberately detuned from ω₀.
    #[serde(default)]
    pub allow_detuning: bool,
}

impl DriveProtocol {
    pub fn resonant(gamma_e0: f64, omega: f64) -> Self {
        Self {
            mode: DriveMode::Oscillating,
            gamma_e0,
            omega,
            phase: 0.0,
            t_on: 0.0,
            t_off: None,
            allow_detuning: false,
        }
    }

    pub fn constant(gamma_e0: f64) -> Self {
        Self { mode: DriveMode::Constant, ..Self::resonant(gamma_e0, 1.0) }
    }

    pub fn off() -> Self {
        Self { mode: DriveMode::Off, ..Self::resonant(0.0, 1.0) }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.gamma_e0.is_finite() {
            return Err(Error::param("drive.gamma_e0_mev_nm", "must be finite"));
        }
        if self.mode == DriveMode::Oscillating && !(self.omega.is_finite() && self.omega > 0.0) {
            return Err(Error::param("drive.omega_rad_per_ps", "must be > 0"));
        }
        if let Some(off) = self.t_off {
            if off < self.t_on {
                return Err(Error::param("drive.t_off_ps", format!("t_off ({off}) < t_on ({})", self.t_on)));
            }
        }
        Ok(())
    }

    fn active(&self, t: f64) -> bool {
        t >= self.t_on && self.t_off.map_or(true, |off| t <= off)
    }

    /// γ₃D|e|E_y(t) in meV·nm. Both oscillating and constant modes are gated
    /// by the `[t_on, t_off]` window.
    pub fn gamma_e(&self, t: f64) -> f64 {
        match self.mode {
            DriveMode::Off => 0.0,
            _ if !self.active(t) => 0.0,
            DriveMode::Constant => self.gamma_e0,
            DriveMode::Oscillating => self.gamma_e0 * (self.omega * t + self.phase).cos(),
        }
    }

    /// The drive replayed backwards from `t_total` with its sign flipped.
    ///
    /// Complex conjugation maps k to −k, so undoing an evolution by
    /// conjugation requires γ(s) → −γ(t_total − s).
    pub fn time_reversed(&self, t_total: f64) -> TimeReversedDrive {
        TimeReversedDrive { inner: *self, t_total }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimeReversedDrive {
    inner: DriveProtocol,
    t_total: f64,
}

impl TimeReversedDrive {
    pub fn gamma_e(&self, t: f64) -> f64 {
        -self.inner.gamma_e(self.t_total - t)
    }
}

/// Convenience free function mirroring [`DriveProtocol::gamma_e`].
pub fn drive_gamma_e(t: f64, drive: &DriveProtocol) -> f64 {
    drive.gamma_e(t)
}

/// Gaussian barrier at x = 0 whose height ramps linearly from 0 at
/// `t_start` to `height_max` at `t_end`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BarrierProtocol {
    #[serde(rename = "t_start_ps")]
    pub t_start: f64,
    #[serde(rename = "t_end_ps")]
    pub t_end: f64,
    #[serde(rename = "height_max_mev")]
    pub height_max: f64,
    #[serde(rename = "sigma_nm")]
    pub sigma: f64,
}

impl BarrierProtocol {
    pub fn validate(&self) -> Result<()> {
        if !(self.height_max.is_finite() && self.height_max >= 0.0) {
            return Err(Error::param("barrier.height_max_mev", "must be >= 0"));
        }
        if !(self.sigma.is_finite() && self.sigma > 0.0) {
            return Err(Error::param("barrier.sigma_nm", "must be > 0"));
        }
        if !(self.t_end >= self.t_start) {
            return Err(Error::param("barrier.t_end_ps", "must be >= t_start_ps"));
        }
        Ok(())
    }

    pub fn height(&self, t: f64) -> f64 {
        if t <= self.t_start {
            0.0
        } else if t >= self.t_end {
            self.height_max
        } else {
            self.height_max * (t - self.t_start) / (self.t_end - self.t_start)
        }
    }

    pub fn profile(&self, x: f64) -> f64 {
        (-x * x / (2.0 * self.sigma * self.sigma)).exp()
    }

    pub fn energy(&self, x: f64, t: f64) -> f64 {
        self.height(t) * self.profile(x)
    }
}

/// u(x) plus the barrier contribution at time t, in meV.
pub fn confinement_energy(
    x: f64,
    t: f64,
    model: &ConfinementModel,
    barrier: Option<&BarrierProtocol>,
    params: &PhysParams,
) -> f64 {
    model.energy(x, params) + barrier.map_or(0.0, |b| b.energy(x, t))
}

/// Spin branch along z: ψ↑ is `Up` (+1), ψ↓ is `Down` (−1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpinBranch {
    Up,
    Down,
}

impl SpinBranch {
    pub const BOTH: [SpinBranch; 2] = [SpinBranch::Up, SpinBranch::Down];

    pub fn sign(self) -> f64 {
        match self {
            SpinBranch::Up => 1.0,
            SpinBranch::Down => -1.0,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            SpinBranch::Up => SpinBranch::Down,
            SpinBranch::Down => SpinBranch::Up,
        }
    }
}

/// Rashba energy of a plane wave e^{ikx} on the given branch, meV.
///
/// `iγσ_z∂_x` acting on e^{ikx} gives −σ_z·γ·k.
pub fn soi_term_momentum_phase(k: f64, gamma_e: f64, branch: SpinBranch) -> f64 {
    -branch.sign() * gamma_e * k
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn params() -> PhysParams {
        PhysParams::default()
    }

    #[test]
    fn parabola_minimum_and_oscillator_length() {
        let p = params();
        let m = ConfinementModel::parabola(p.omega0);
        assert_eq!(confinement_energy(0.0, 3.0, &m, None, &p), 0.0);
        // independent route: ½·(ħ²/m)/l⁴·l² with l² = (ħ²/m)/(ħω)
        let l2 = p.hbar2_over_m / (p.hbar * p.omega0);
        let expected = 0.5 * p.hbar * p.omega0;
        let got = m.energy(l2.sqrt(), &p);
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 0.376).abs() < 5e-4);
        assert!((l2.sqrt() - 85.08).abs() < 0.01);
    }

    #[test]
    fn barrier_ramp_endpoint() {
        let p = params();
        let b = BarrierProtocol { t_start: 7.0, t_end: 9.5, height_max: 10.0, sigma: 60.0 };
        for m in [ConfinementModel::parabola(p.omega0), ConfinementModel::saturating(p.omega0, 350.0)] {
            let e = confinement_energy(0.0, 9.5, &m, Some(&b), &p);
            assert!((e - (m.energy(0.0, &p) + 10.0)).abs() < 1e-12);
        }
        assert_eq!(b.height(7.0), 0.0);
        assert_eq!(b.height(20.0), 10.0);
        assert!((b.height(8.25) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn drive_values() {
        let p = params();
        let d = DriveProtocol::resonant(40.0, p.omega0);
        assert_eq!(drive_gamma_e(0.0, &d), 40.0);
        assert!(drive_gamma_e(5.5 / 4.0, &d).abs() < 1e-12);
        let gated = DriveProtocol { t_on: 2.0, t_off: Some(4.0), ..d };
        assert_eq!(gated.gamma_e(1.0), 0.0);
        assert_eq!(gated.gamma_e(4.5), 0.0);
        assert!(gated.gamma_e(3.0) != 0.0);
        assert_eq!(DriveProtocol::off().gamma_e(0.0), 0.0);
        assert_eq!(DriveProtocol::constant(12.0).gamma_e(100.0), 12.0);
    }

    #[test]
    fn drive_window_validation() {
        let d = DriveProtocol { t_on: 5.0, t_off: Some(2.0), ..DriveProtocol::resonant(1.0, 1.0) };
        assert!(d.validate().is_err());
    }

    #[test]
    fn soi_term_values() {
        let q = 40.0 / params().hbar2_over_m;
        assert!((q - 7.349e-3).abs() < 1e-6);
        let e = soi_term_momentum_phase(q, 40.0, SpinBranch::Up);
        assert!((e - (-40.0 * q)).abs() < 1e-15);
        assert!((e + 0.2940).abs() < 1e-4);
        assert_eq!(soi_term_momentum_phase(0.0, 40.0, SpinBranch::Down), 0.0);
    }

    proptest! {
        #[test]
        fn saturating_well_is_parabolic_near_centre(frac in 1e-3f64..0.15, xc in 100.0f64..600.0) {
            let p = params();
            let m = ConfinementModel::saturating(p.omega0, xc);
            let x = frac * xc;
            let harm = 0.5 * p.m_omega2() * x * x;
            prop_assert!(((m.energy(x, &p) - harm) / harm).abs() < 0.01);
        }

        #[test]
        fn barrier_non_decreasing(t1 in -5.0f64..30.0, dt in 0.0f64..10.0) {
            let b = BarrierProtocol { t_start: 7.0, t_end: 9.5, height_max: 10.0, sigma: 60.0 };
            prop_assert!(b.height(t1 + dt) >= b.height(t1));
        }

        #[test]
        fn drive_even_about_peaks(n in 0u32..4, s in 0.0f64..1.0) {
            let p = params();
            let d = DriveProtocol::resonant(40.0, p.omega0);
            let peak = n as f64 * 2.0 * PI / p.omega0 + 5.5;
            prop_assert!((d.gamma_e(peak + s) - d.gamma_e(peak - s)).abs() < 1e-10);
        }

        #[test]
        fn soi_term_is_odd(k in -1.0f64..1.0, g in -100.0f64..100.0) {
            let up = soi_term_momentum_phase(k, g, SpinBranch::Up);
            prop_assert_eq!(up, -soi_term_momentum_phase(-k, g, SpinBranch::Up));
            prop_assert_eq!(up, -soi_term_momentum_phase(k, g, SpinBranch::Down));
        }
    }
}
