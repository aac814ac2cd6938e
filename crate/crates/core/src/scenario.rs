//! Experiment description, presets and config validation.
//!
//! A scenario is a single TOML document whose keys carry their units
//! (`extent_nm`, `dt_ps`, …). The emitted TOML is canonical: emitting a parsed
//! scenario reproduces the same bytes, and its SHA-256 is the content hash
//! recorded with every run.

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::electrostatics::DeviceStack;
use crate::error::{Error, Result};
use crate::grid::{GridSpec, MIN_POINTS};
use crate::potential::{BarrierProtocol, ConfinementModel, DriveMode, DriveProtocol, DEFAULT_SATURATION_SCALE};
use crate::propagator::{EvolutionConfig, RelaxConfig};
use crate::state::SpinOrientation;
use crate::units::PhysParams;

/// Relative drive detuning above which a warning is raised unless
/// `allow_detuning` is set.
pub const DETUNING_WARN: f64 = 1e-6;

/// Box used by the presets. The driven packet reaches |α| ≈ 2.4 (≈ 290 nm)
/// and its Gaussian tail would cross the edge-density guard on a 600 nm box;
/// doubling the box at the same spacing keeps the edge density below 1e−12.
pub const PRESET_GRID: GridSpec = GridSpec { extent_nm: 1200.0, n_points: 4096 };

/// Names accepted by [`Scenario::preset`].
pub const PRESETS: [&str; 3] = ["fig2", "fig3", "fig4"];

/// Artifact toggles.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputOptions {
    /// Write `timeseries.csv`.
    pub time_series: bool,
    /// Write `density_up.csv`, `density_down.csv` and `density_axes.json`.
    pub density_maps: bool,
    /// Keep every n-th recorded sample in the density maps.
    pub density_stride: usize,
    /// Write the final spinor to `final_state.csv`.
    pub final_snapshot: bool,
}

impl Default for OutputOptions {
    fn default() -> Self {
        Self { time_series: true, density_maps: true, density_stride: 4, final_snapshot: false }
    }
}

/// Gate voltages of the device the scenario stands for. They are recorded
/// for provenance; the simulation consumes the calibrated confinement and
/// drive parameters instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GateRecord {
    /// Finger gates e₁…e₅ along the wire, mV.
    pub finger_gates_mv: Vec<f64>,
    /// Amplitude of the antiphase side-gate drive, mV.
    pub v_lr_mv: f64,
    /// Final voltage of the central finger gate when the barrier is raised, mV.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barrier_gate_final_mv: Option<f64>,
}

impl Default for GateRecord {
    fn default() -> Self {
        Self { finger_gates_mv: vec![-30.0, 10.0, 20.0, 10.0, -30.0], v_lr_mv: 500.0, barrier_gate_final_mv: None }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scenario {
    pub name: String,
    pub initial_spin: SpinOrientation,
    pub physics: PhysParams,
    pub grid: GridSpec,
    pub confinement: ConfinementModel,
    pub drive: DriveProtocol,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub barrier: Option<BarrierProtocol>,
    pub evolution: EvolutionConfig,
    #[serde(default)]
    pub relaxation: RelaxConfig,
    #[serde(default)]
    pub outputs: OutputOptions,
    #[serde(default)]
    pub gates: GateRecord,
    /// Cross-section used to estimate the side-gate lever arm.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub electrostatics: Option<DeviceStack>,
}

impl Scenario {
    /// Resonant drive on a spin-x electron in the saturating well, 14 ps.
    pub fn fig2() -> Self {
        let physics = PhysParams::default();
        Self {
            name: "fig2".into(),
            initial_spin: SpinOrientation::XPlus,
            physics,
            grid: PRESET_GRID,
            confinement: ConfinementModel::saturating(physics.omega0, DEFAULT_SATURATION_SCALE),
            drive: DriveProtocol::resonant(physics.gamma_e_amplitude, physics.omega0),
            barrier: None,
            evolution: EvolutionConfig { t_final: 14.0, ..EvolutionConfig::default() },
            relaxation: RelaxConfig::default(),
            outputs: OutputOptions::default(),
            gates: GateRecord::default(),
            electrostatics: Some(DeviceStack::default()),
        }
    }

    /// fig2 with the drive stopped once |α| ≈ 2 and a central barrier raised
    /// between 7 and 9.5 ps, 20 ps in total.
    pub fn fig3() -> Self {
        let base = Self::fig2();
        Self {
            name: "fig3".into(),
            drive: DriveProtocol { t_off: Some(8.0), ..base.drive },
            barrier: Some(BarrierProtocol { t_start: 7.0, t_end: 9.5, height_max: 20.0, sigma: 60.0 }),
            evolution: EvolutionConfig { t_final: 20.0, ..base.evolution },
            gates: GateRecord { barrier_gate_final_mv: Some(-60.0), ..GateRecord::default() },
            ..base
        }
    }

    /// fig2 with a spin-up electron: a single coherent state, 14 ps.
    pub fn fig4() -> Self {
        Self { name: "fig4".into(), initial_spin: SpinOrientation::ZPlus, ..Self::fig2() }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "fig2" => Some(Self::fig2()),
            "fig3" => Some(Self::fig3()),
            "fig4" => Some(Self::fig4()),
            _ => None,
        }
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        Ok(toml::from_str(text)?)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        Ok(toml::to_string(self)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    /// A preset name or a path to a TOML file.
    pub fn resolve(spec: &str) -> Result<Self> {
        match Self::preset(spec) {
            Some(s) => Ok(s),
            None => {
                let path = Path::new(spec);
                if !path.exists() {
                    return Err(Error::Config(format!(
                        "'{spec}' is neither a preset ({}) nor an existing file",
                        PRESETS.join(", ")
                    )));
                }
                Self::load(path)
            }
        }
    }

    /// Hex SHA-256 of the canonical TOML.
    pub fn content_hash(&self) -> Result<String> {
        Ok(hex::encode(Sha256::digest(self.to_toml_string()?.as_bytes())))
    }

    /// All rule violations, errors and warnings alike.
    pub fn diagnostics(&self) -> Vec<Diagnostic> {
        let mut out = Vec::new();
        let mut check = |r: Result<()>| {
            if let Err(e) = r {
                out.push(Diagnostic::from_error(&e));
            }
        };
        check(self.physics.validate());
        check(self.confinement.validate());
        check(self.drive.validate());
        if let Some(b) = &self.barrier {
            check(b.validate());
        }
        check(self.evolution.validate(self.physics.omega0));
        check(self.grid.build().map(|_| ()));
        if !(self.relaxation.dtau.is_finite() && self.relaxation.dtau > 0.0) {
            out.push(Diagnostic::error("relaxation.dtau_ps", "must be > 0"));
        }
        if !(self.relaxation.tol.is_finite() && self.relaxation.tol > 0.0) {
            out.push(Diagnostic::error("relaxation.tol", "must be > 0"));
        }
        if self.relaxation.max_iterations == 0 {
            out.push(Diagnostic::error("relaxation.max_iterations", "must be >= 1"));
        }
        if self.outputs.density_stride == 0 {
            out.push(Diagnostic::error("outputs.density_stride", "must be >= 1"));
        }
        if self.grid.n_points < MIN_POINTS {
            out.push(Diagnostic::error(
                "grid.n_points",
                format!("{} points is below the minimum of {MIN_POINTS}", self.grid.n_points),
            ));
        }

        let w0 = self.physics.omega0;
        if (self.confinement.omega0 - w0).abs() > DETUNING_WARN * w0 {
            out.push(Diagnostic::error(
                "confinement.omega0_rad_per_ps",
                format!("{} differs from physics.omega0_rad_per_ps = {w0}", self.confinement.omega0),
            ));
        }
        if self.drive.mode == DriveMode::Oscillating && !self.drive.allow_detuning {
            let detuning = (self.drive.omega - w0) / w0;
            if detuning.abs() > DETUNING_WARN {
                out.push(Diagnostic::warning(
                    "drive.omega_rad_per_ps",
                    format!(
                        "drive detuned by {:+.2}% from the confinement frequency; set drive.allow_detuning = true if intended",
                        100.0 * detuning
                    ),
                ));
            }
        }
        if self.drive.mode != DriveMode::Off && self.drive.gamma_e0 != self.physics.gamma_e_amplitude {
            out.push(Diagnostic::warning(
                "drive.gamma_e0_mev_nm",
                format!(
                    "{} differs from physics.gamma_e0_mev_nm = {}; the drive value is used",
                    self.drive.gamma_e0, self.physics.gamma_e_amplitude
                ),
            ));
        }
        if let Some(b) = &self.barrier {
            if b.t_end > self.evolution.t_final {
                out.push(Diagnostic::warning("barrier.t_end_ps", "barrier ramp ends after the run"));
            }
        }
        out
    }

    /// Fails with the first error diagnostic, if any.
    pub fn validate(&self) -> Result<()> {
        match self.diagnostics().into_iter().find(|d| d.severity == Severity::Error) {
            Some(d) => Err(Error::InvalidParameter { field: d.field, reason: d.message }),
            None => Ok(()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub field: String,
    pub message: String,
}

impl Diagnostic {
    pub fn error(field: &str, message: impl Into<String>) -> Self {
        Self { severity: Severity::Error, field: field.into(), message: message.into() }
    }

    pub fn warning(field: &str, message: impl Into<String>) -> Self {
        Self { severity: Severity::Warning, field: field.into(), message: message.into() }
    }

    fn from_error(e: &Error) -> Self {
        match e {
            Error::InvalidParameter { field, reason } => Self::error(field, reason.clone()),
            Error::InvalidGrid(msg) => Self::error("grid", msg.clone()),
            other => Self::error("", other.to_string()),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}: {}", self.field, self.message)
    }
}

/// Parses the file and lists every violation without running anything.
pub fn validate_config(path: &Path) -> Result<Vec<Diagnostic>> {
    Ok(Scenario::load(path)?.diagnostics())
}
