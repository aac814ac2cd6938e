//! Scenario execution and artifact writing.
//!
//! A run relaxes the trap ground state in imaginary time, dresses it with the
//! requested spin orientation and the Rashba twist of the drive at t = 0,
//! evolves it in real time and writes:
//!
//! * `timeseries.csv` — one row per recorded sample, see [`CSV_HEADER`];
//! * `density_up.csv`, `density_down.csv` — |ψ↑|² and |ψ↓|², one row per
//!   kept sample and one column per grid point, with `density_axes.json`
//!   holding the time and position axes;
//! * `summary.json` — final amplitudes, spin halves and acceptance flags;
//! * `scenario.toml` — canonical echo of the scenario whose SHA-256 is
//!   recorded in the summary.
//!
//! All numbers are written with fixed formats so that identical scenarios
//! produce byte-identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::Serialize;

use crate::coherence::CoherenceReport;
use crate::electrostatics::{lever_arm, SolverOptions, INSB_GAMMA_3D_NM2};
use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::hamiltonian::Hamiltonian;
use crate::oracle::soi_wavevector;
use crate::potential::{DriveProtocol, SpinBranch};
use crate::propagator::{relax_imaginary_time, run_evolution, RelaxOutcome, Sample, TimeSeries};
use crate::scenario::Scenario;
use crate::state::{prepare_initial_state, SpinOrientation, SpinorState};
use crate::Complex64;

/// Column order of `timeseries.csv`.
pub const CSV_HEADER: [&str; 15] = [
    "t_ps",
    "alpha_up_re",
    "alpha_up_im",
    "alpha_dn_re",
    "alpha_dn_im",
    "c_up",
    "c_dn",
    "x_up_nm",
    "x_dn_nm",
    "x_pred_up_nm",
    "x_pred_dn_nm",
    "sz_left",
    "sz_right",
    "norm",
    "energy_meV",
];

/// Window over which the trap is close enough to harmonic for the
/// coherent-state checks, ps.
pub const PARABOLIC_WINDOW_PS: f64 = 6.0;

/// Band within which the quality metric c counts as coherent.
pub const COHERENCE_BAND: (f64, f64) = (0.95, 1.05);

/// Norm below which a spin component counts as empty.
pub const EMPTY_COMPONENT_NORM: f64 = 1e-6;

/// Ground state used to seed every run.
#[derive(Debug, Clone)]
pub struct GroundState {
    /// Real, non-negative, normalised envelope of the trap ground state.
    pub envelope: Vec<f64>,
    /// Its energy with the drive off, meV.
    pub energy: f64,
    pub iterations: usize,
}

/// Relaxes the trap ground state with the drive switched off.
pub fn relax_ground_state(scenario: &Scenario, grid: Arc<Grid1D>) -> Result<GroundState> {
    let ham = Hamiltonian::new(
        grid.clone(),
        scenario.physics,
        scenario.confinement,
        DriveProtocol::off(),
        scenario.barrier,
    )?;
    let seed = gaussian_seed(&grid, scenario.physics.oscillator_length())?;
    let RelaxOutcome { state, energy, iterations, .. } = relax_imaginary_time(&seed, &ham, &scenario.relaxation)?;
    let envelope: Vec<f64> = state.up.iter().map(|c| c.norm()).collect();
    Ok(GroundState { envelope, energy, iterations })
}

fn gaussian_seed(grid: &Arc<Grid1D>, width: f64) -> Result<SpinorState> {
    let up: Vec<Complex64> =
        grid.x.iter().map(|&x| Complex64::new((-x * x / (2.0 * width * width)).exp(), 0.0)).collect();
    let mut s = SpinorState::new(grid.clone(), up, vec![Complex64::new(0.0, 0.0); grid.n_points], 0.0)?;
    s.normalize();
    Ok(s)
}

/// Ground envelope dressed with the spin orientation and the Rashba twist
/// e^{±iqx} of the coupling present at t = 0.
pub fn initial_state(scenario: &Scenario, grid: Arc<Grid1D>, ground: &GroundState) -> Result<SpinorState> {
    let q0 = soi_wavevector(scenario.drive.gamma_e(0.0), &scenario.physics);
    prepare_initial_state(grid, &ground.envelope, scenario.initial_spin, q0)
}

/// In-memory result of a run.
#[derive(Debug, Clone)]
pub struct Simulation {
    pub ground: GroundState,
    pub series: TimeSeries,
    pub hamiltonian: Hamiltonian,
}

/// Relaxes, prepares and evolves a validated scenario.
pub fn simulate(scenario: &Scenario) -> Result<Simulation> {
    scenario.validate()?;
    let grid = Arc::new(scenario.grid.build()?);
    let ground = relax_ground_state(scenario, grid.clone())?;
    let initial = initial_state(scenario, grid.clone(), &ground)?;
    let hamiltonian =
        Hamiltonian::new(grid, scenario.physics, scenario.confinement, scenario.drive, scenario.barrier)?;
    let mut evolution = scenario.evolution;
    evolution.record_densities = scenario.outputs.density_maps;
    let series = run_evolution(&initial, &evolution, &hamiltonian)?;
    Ok(Simulation { ground, series, hamiltonian })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComponentSummary {
    pub alpha_re: Option<f64>,
    pub alpha_im: Option<f64>,
    pub alpha_abs: Option<f64>,
    pub c: Option<f64>,
    pub max_alpha_abs: Option<f64>,
    pub max_norm: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AcceptanceFlags {
    /// One spin component stays empty and the other keeps c within the
    /// coherence band over the parabolic window.
    pub single_cs: bool,
    /// Every defined c lies within the coherence band over the parabolic window.
    pub coherence_in_band: bool,
    /// |α↑ + α↓| < 0.05 while |α↑| ≤ 2 (two-component runs only).
    pub opposite_displacements: Option<bool>,
    /// Total norm stays within 1e−9 of one.
    pub norm_conserved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Electrostatics {
    /// E_y at the wire axis per volt of antiphase side-gate drive, nm⁻¹.
    pub lever_arm_per_nm: f64,
    /// γ₃D|e|E_y at the side-gate amplitude of the gate record, meV·nm.
    pub gamma_e_estimate_mev_nm: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunSummary {
    pub scenario: String,
    pub content_hash: String,
    pub samples: usize,
    pub t_final_ps: f64,
    pub ground_energy_mev: f64,
    pub relax_iterations: usize,
    pub up: ComponentSummary,
    pub down: ComponentSummary,
    pub sz_left: f64,
    pub sz_right: f64,
    pub max_norm_drift: f64,
    pub flags: AcceptanceFlags,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub electrostatics: Option<Electrostatics>,
}

fn component_summary(samples: &[Sample], branch: SpinBranch) -> ComponentSummary {
    let last = samples.last().map(|s| s.report).unwrap_or_default();
    let alpha = last.alpha(branch);
    let max_alpha_abs = samples
        .iter()
        .filter_map(|s| s.report.alpha(branch).map(|a| a.norm()))
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
    let max_norm = samples
        .iter()
        .map(|s| match branch {
            SpinBranch::Up => s.observables.norm_up,
            SpinBranch::Down => s.observables.norm_down,
        })
        .fold(0.0, f64::max);
    ComponentSummary {
        alpha_re: alpha.map(|a| a.re),
        alpha_im: alpha.map(|a| a.im),
        alpha_abs: alpha.map(|a| a.norm()),
        c: last.quality(branch),
        max_alpha_abs,
        max_norm,
    }
}

fn in_band(c: f64) -> bool {
    c >= COHERENCE_BAND.0 && c <= COHERENCE_BAND.1
}

/// Evaluates the acceptance flags on a recorded series.
pub fn acceptance_flags(samples: &[Sample]) -> AcceptanceFlags {
    let window = || samples.iter().filter(|s| s.time <= PARABOLIC_WINDOW_PS + 1e-9);
    let qualities = |b: SpinBranch| window().filter_map(move |s| s.report.quality(b));
    let coherence_in_band = SpinBranch::BOTH.iter().all(|&b| qualities(b).all(in_band));
    let max_norm = |b: SpinBranch| component_summary(samples, b).max_norm;

    let empty = SpinBranch::BOTH.into_iter().find(|&b| max_norm(b) < EMPTY_COMPONENT_NORM);
    let single_cs = match empty {
        Some(b) => {
            let full = b.flipped();
            let mut cs = qualities(full).peekable();
            cs.peek().is_some() && cs.all(in_band)
        }
        None => false,
    };
    let opposite_displacements = empty.is_none().then(|| {
        samples.iter().all(|s| match (s.report.alpha_up, s.report.alpha_down) {
            (Some(u), Some(d)) if u.norm() <= 2.0 => (u + d).norm() < 0.05,
            _ => true,
        })
    });
    let norm_conserved = max_norm_drift(samples) < 1e-9;
    AcceptanceFlags { single_cs, coherence_in_band, opposite_displacements, norm_conserved }
}

fn max_norm_drift(samples: &[Sample]) -> f64 {
    samples.iter().map(|s| (s.observables.norm_up + s.observables.norm_down - 1.0).abs()).fold(0.0, f64::max)
}

/// Side-gate lever arm of the scenario's cross-section, if one is given.
pub fn electrostatics_estimate(scenario: &Scenario) -> Result<Option<Electrostatics>> {
    let Some(stack) = &scenario.electrostatics else {
        return Ok(None);
    };
    let lever = lever_arm(stack, &SolverOptions::default())?;
    let field = lever * scenario.gates.v_lr_mv * 1e-3;
    Ok(Some(Electrostatics {
        lever_arm_per_nm: lever,
        // nm² · V/nm = eV·nm
        gamma_e_estimate_mev_nm: INSB_GAMMA_3D_NM2 * field * 1e3,
    }))
}

pub fn summarize(scenario: &Scenario, sim: &Simulation) -> Result<RunSummary> {
    let samples = &sim.series.samples;
    let last = samples.last().ok_or_else(|| Error::Config("run recorded no samples".into()))?;
    Ok(RunSummary {
        scenario: scenario.name.clone(),
        content_hash: scenario.content_hash()?,
        samples: samples.len(),
        t_final_ps: last.time,
        ground_energy_mev: sim.ground.energy,
        relax_iterations: sim.ground.iterations,
        up: component_summary(samples, SpinBranch::Up),
        down: component_summary(samples, SpinBranch::Down),
        sz_left: last.sz_left,
        sz_right: last.sz_right,
        max_norm_drift: max_norm_drift(samples),
        flags: acceptance_flags(samples),
        electrostatics: electrostatics_estimate(scenario)?,
    })
}

fn opt(v: Option<f64>) -> String {
    v.map(|v| format!("{v:.10e}")).unwrap_or_default()
}

fn csv_row(s: &Sample) -> String {
    let r: &CoherenceReport = &s.report;
    let o = &s.observables;
    let fields = [
        format!("{:.6}", s.time),
        opt(r.alpha_up.map(|a| a.re)),
        opt(r.alpha_up.map(|a| a.im)),
        opt(r.alpha_down.map(|a| a.re)),
        opt(r.alpha_down.map(|a| a.im)),
        opt(r.c_up),
        opt(r.c_down),
        opt(o.x_up),
        opt(o.x_down),
        opt(r.predicted_x_up),
        opt(r.predicted_x_down),
        format!("{:.10e}", s.sz_left),
        format!("{:.10e}", s.sz_right),
        format!("{:.12e}", o.norm_up + o.norm_down),
        format!("{:.10e}", o.energy),
    ];
    fields.join(",")
}

/// The time series as CSV text with the [`CSV_HEADER`] columns.
pub fn timeseries_csv(samples: &[Sample]) -> String {
    let mut out = CSV_HEADER.join(",");
    out.push('\n');
    for s in samples {
        out.push_str(&csv_row(s));
        out.push('\n');
    }
    out
}

fn matrix_csv(rows: &[&Vec<f64>]) -> String {
    let mut out = String::new();
    for row in rows {
        for (i, v) in row.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            let _ = write!(out, "{v:.6e}");
        }
        out.push('\n');
    }
    out
}

#[derive(Debug, Serialize)]
struct DensityAxes<'a> {
    rows: &'a str,
    columns: &'a str,
    units: &'a str,
    files: [&'a str; 2],
    t_ps: Vec<f64>,
    x_nm: &'a [f64],
}

/// Files written by [`write_artifacts`].
#[derive(Debug, Clone)]
pub struct RunArtifacts {
    pub dir: PathBuf,
    pub files: Vec<PathBuf>,
    pub summary: RunSummary,
}

pub fn write_artifacts(scenario: &Scenario, sim: &Simulation, dir: &Path) -> Result<RunArtifacts> {
    fs::create_dir_all(dir)?;
    let mut files = Vec::new();
    let mut put = |name: &str, text: &str| -> Result<()> {
        let path = dir.join(name);
        fs::write(&path, text)?;
        files.push(path);
        Ok(())
    };
    let samples = &sim.series.samples;
    put("scenario.toml", &scenario.to_toml_string()?)?;
    if scenario.outputs.time_series {
        put("timeseries.csv", &timeseries_csv(samples))?;
    }
    if let (true, Some(d)) = (scenario.outputs.density_maps, &sim.series.densities) {
        let stride = scenario.outputs.density_stride.max(1);
        let keep: Vec<usize> = (0..d.up.len()).step_by(stride).collect();
        put("density_up.csv", &matrix_csv(&keep.iter().map(|&i| &d.up[i]).collect::<Vec<_>>()))?;
        put("density_down.csv", &matrix_csv(&keep.iter().map(|&i| &d.down[i]).collect::<Vec<_>>()))?;
        let axes = DensityAxes {
            rows: "t_ps",
            columns: "x_nm",
            units: "nm^-1",
            files: ["density_up.csv", "density_down.csv"],
            t_ps: keep.iter().map(|&i| samples[i].time).collect(),
            x_nm: &sim.series.final_state.grid.x,
        };
        put("density_axes.json", &serde_json::to_string_pretty(&axes)?)?;
    }
    if scenario.outputs.final_snapshot {
        let st = &sim.series.final_state;
        let mut text = String::from("x_nm,up_re,up_im,down_re,down_im\n");
        for ((x, u), d) in st.grid.x.iter().zip(&st.up).zip(&st.down) {
            let _ = writeln!(text, "{x:.6},{:.10e},{:.10e},{:.10e},{:.10e}", u.re, u.im, d.re, d.im);
        }
        put("final_state.csv", &text)?;
    }
    let summary = summarize(scenario, sim)?;
    put("summary.json", &serde_json::to_string_pretty(&summary)?)?;
    Ok(RunArtifacts { dir: dir.to_path_buf(), files, summary })
}

/// Validates, simulates and writes all artifacts into `dir`.
pub fn run_scenario(scenario: &Scenario, dir: &Path) -> Result<RunArtifacts> {
    let sim = simulate(scenario)?;
    write_artifacts(scenario, &sim, dir)
}

/// Ground-state energy report for the `relax` command.
#[derive(Debug, Clone, Serialize)]
pub struct RelaxReport {
    pub scenario: String,
    pub energy_drive_off_mev: f64,
    pub energy_at_t0_mev: f64,
    pub zero_point_mev: f64,
    pub soi_shift_mev: f64,
    pub iterations: usize,
}

/// Relaxes with the drive off and with the drive frozen at t = 0.
pub fn relax_report(scenario: &Scenario) -> Result<RelaxReport> {
    scenario.validate()?;
    let grid = Arc::new(scenario.grid.build()?);
    let ground = relax_ground_state(scenario, grid.clone())?;
    let ham = Hamiltonian::new(grid.clone(), scenario.physics, scenario.confinement, scenario.drive, scenario.barrier)?;
    let seed = prepare_initial_state(grid, &ground.envelope, SpinOrientation::ZPlus, 0.0)?;
    let dressed = relax_imaginary_time(&seed, &ham, &scenario.relaxation)?;
    Ok(RelaxReport {
        scenario: scenario.name.clone(),
        energy_drive_off_mev: ground.energy,
        energy_at_t0_mev: dressed.energy,
        zero_point_mev: 0.5 * scenario.physics.hbar_omega(),
        soi_shift_mev: ground.energy - dressed.energy,
        iterations: ground.iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::potential::ConfinementModel;

    fn short(mut s: Scenario) -> Scenario {
        s.evolution.t_final = 0.2;
        s.evolution.record_stride = 40;
        s.electrostatics = None;
        s
    }

    #[test]
    fn header_order() {
        let csv = timeseries_csv(&[]);
        assert_eq!(
            csv.trim_end(),
            "t_ps,alpha_up_re,alpha_up_im,alpha_dn_re,alpha_dn_im,c_up,c_dn,x_up_nm,x_dn_nm,\
             x_pred_up_nm,x_pred_dn_nm,sz_left,sz_right,norm,energy_meV"
        );
    }

    #[test]
    fn ground_energy_is_zero_point() {
        let mut s = Scenario::fig2();
        s.confinement = ConfinementModel::parabola(s.physics.omega0);
        let grid = Arc::new(s.grid.build().unwrap());
        let g = relax_ground_state(&s, grid).unwrap();
        let e0 = 0.5 * s.physics.hbar_omega();
        assert!(((g.energy - e0) / e0).abs() < 5e-3);
        assert!(g.envelope.iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn empty_component_gives_empty_fields() {
        let s = short(Scenario::fig4());
        let sim = simulate(&s).unwrap();
        let csv = timeseries_csv(&sim.series.samples);
        let rows: Vec<&str> = csv.lines().collect();
        assert_eq!(rows.len(), sim.series.samples.len() + 1);
        let f: Vec<&str> = rows[1].split(',').collect();
        assert_eq!(f.len(), CSV_HEADER.len());
        for i in [3, 4, 6, 8, 10] {
            assert_eq!(f[i], "", "column {}", CSV_HEADER[i]);
        }
        assert!(!f[1].is_empty() && !f[5].is_empty());
    }

    #[test]
    fn artifacts_are_deterministic() {
        let s = short(Scenario::fig2());
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        let ra = run_scenario(&s, a.path()).unwrap();
        run_scenario(&s, b.path()).unwrap();
        for f in &ra.files {
            let name = f.file_name().unwrap();
            assert_eq!(fs::read(f).unwrap(), fs::read(b.path().join(name)).unwrap(), "{name:?}");
        }
        assert_eq!(ra.summary.content_hash, s.content_hash().unwrap());
        let echo = Scenario::load(&a.path().join("scenario.toml")).unwrap();
        assert_eq!(echo, s);
    }

    #[test]
    fn density_maps_shape() {
        let s = short(Scenario::fig2());
        let dir = tempfile::tempdir().unwrap();
        run_scenario(&s, dir.path()).unwrap();
        let up = fs::read_to_string(dir.path().join("density_up.csv")).unwrap();
        let axes: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(dir.path().join("density_axes.json")).unwrap()).unwrap();
        let n_rows = axes["t_ps"].as_array().unwrap().len();
        assert_eq!(up.lines().count(), n_rows);
        assert!(up.lines().all(|l| l.split(',').count() == s.grid.n_points));
        assert_eq!(axes["x_nm"].as_array().unwrap().len(), s.grid.n_points);
    }

    #[test]
    fn invalid_scenario_is_config_error() {
        let mut s = short(Scenario::fig2());
        s.evolution.dt = 0.1;
        let e = simulate(&s).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }
}
