//! Strang split-step propagation of the spinor.
//!
//! Each step applies half a potential phase in x, the full kinetic + Rashba
//! phase in k (exact, since both are diagonal per spin branch there), and the
//! second half potential phase. The time-dependent terms are sampled at the
//! step midpoint. Imaginary-time relaxation reuses the same splitting with
//! real decay factors and renormalises after every step.

use serde::{Deserialize, Serialize};

use crate::coherence::{CoherenceReport, LadderAnalyzer, LadderFrame};
use crate::error::{Error, Result};
use crate::hamiltonian::Hamiltonian;
use crate::potential::SpinBranch;
use crate::state::{observables, spin_z_halfwire, Observables, Side, SpinorState};
use crate::Complex64;

/// Upper bound on dt·ω₀ so the drive is well resolved.
pub const MAX_DT_OMEGA: f64 = 0.01;

/// Edge density above which a run is aborted as a domain overflow.
pub const EDGE_DENSITY_LIMIT: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvolutionConfig {
    #[serde(rename = "dt_ps")]
    pub dt: f64,
    #[serde(rename = "t_final_ps")]
    pub t_final: f64,
    pub record_stride: usize,
    /// Keep |ψ↑|² and |ψ↓|² at every recorded sample. Set from the output
    /// toggles of a scenario rather than read from the config file.
    #[serde(skip)]
    pub record_densities: bool,
}

impl Default for EvolutionConfig {
    fn default() -> Self {
        Self { dt: 5e-4, t_final: 14.0, record_stride: 100, record_densities: false }
    }
}

impl EvolutionConfig {
    pub fn validate(&self, omega0: f64) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::param("evolution.dt_ps", "must be > 0"));
        }
        if self.dt * omega0 >= MAX_DT_OMEGA {
            return Err(Error::param(
                "evolution.dt_ps",
                format!("dt·ω₀ exceeds bound ({:.4} ≥ {MAX_DT_OMEGA})", self.dt * omega0),
            ));
        }
        if !(self.t_final.is_finite() && self.t_final >= 0.0) {
            return Err(Error::param("evolution.t_final_ps", "must be >= 0"));
        }
        if self.record_stride == 0 {
            return Err(Error::param("evolution.record_stride", "must be >= 1"));
        }
        Ok(())
    }

    pub fn n_steps(&self) -> usize {
        (self.t_final / self.dt).round() as usize
    }
}

/// Real-time stepper with cached phase factors.
#[derive(Debug, Clone)]
pub struct Propagator {
    ham: Hamiltonian,
    dt: f64,
    kinetic_phase: Vec<Complex64>,
    potential: Vec<f64>,
    potential_phase: Vec<Complex64>,
    cached_height: Option<f64>,
    soi_phase: Vec<Complex64>,
}

impl Propagator {
    pub fn new(ham: Hamiltonian, dt: f64) -> Self {
        let hbar = ham.params.hbar;
        let kinetic_phase = ham.kinetic().iter().map(|&e| Complex64::from_polar(1.0, -e * dt / hbar)).collect();
        let n = ham.grid().n_points;
        Self {
            ham,
            dt,
            kinetic_phase,
            potential: vec![0.0; n],
            potential_phase: vec![Complex64::new(1.0, 0.0); n],
            cached_height: None,
            soi_phase: vec![Complex64::new(1.0, 0.0); n],
        }
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.ham
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    fn refresh_potential(&mut self, t: f64) {
        let h = self.ham.barrier_height(t);
        if self.cached_height == Some(h) {
            return;
        }
        self.ham.potential_into(t, &mut self.potential);
        let f = -0.5 * self.dt / self.ham.params.hbar;
        for (ph, &v) in self.potential_phase.iter_mut().zip(&self.potential) {
            *ph = Complex64::from_polar(1.0, f * v);
        }
        self.cached_height = Some(h);
    }

    /// Advances `state` by one step of `dt` in place.
    pub fn step(&mut self, state: &mut SpinorState) -> Result<()> {
        let tm = state.time + 0.5 * self.dt;
        self.refresh_potential(tm);
        let g = self.ham.gamma_e(tm);
        let f = g * self.dt / self.ham.params.hbar;
        let spectral = self.ham.spectral().clone();
        // branch Up carries exp(+iγk dt/ħ); Down is its conjugate
        for (s, &k) in self.soi_phase.iter_mut().zip(&spectral.k) {
            *s = Complex64::from_polar(1.0, f * k);
        }
        for b in SpinBranch::BOTH {
            let psi = state.component_mut(b);
            if psi.iter().all(|c| c.re == 0.0 && c.im == 0.0) {
                continue;
            }
            for (p, ph) in psi.iter_mut().zip(&self.potential_phase) {
                *p *= ph;
            }
            spectral.forward(psi);
            for ((p, kp), sp) in psi.iter_mut().zip(&self.kinetic_phase).zip(&self.soi_phase) {
                let soi = if b == SpinBranch::Up { *sp } else { sp.conj() };
                *p *= kp * soi;
            }
            spectral.inverse(psi);
            for (p, ph) in psi.iter_mut().zip(&self.potential_phase) {
                *p *= ph;
            }
        }
        state.time += self.dt;
        if !state.is_finite() {
            return Err(Error::NumericalBlowup { time: state.time, max_amplitude: state.max_amplitude() });
        }
        Ok(())
    }
}

/// One real-time step from `state`, returning the advanced state.
pub fn step_real_time(state: &SpinorState, dt: f64, ham: &Hamiltonian) -> Result<SpinorState> {
    let mut next = state.clone();
    Propagator::new(ham.clone(), dt).step(&mut next)?;
    Ok(next)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub time: f64,
    pub report: CoherenceReport,
    pub observables: Observables,
    pub sz_left: f64,
    pub sz_right: f64,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct DensityRecord {
    pub up: Vec<Vec<f64>>,
    pub down: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct TimeSeries {
    pub samples: Vec<Sample>,
    pub densities: Option<DensityRecord>,
    pub dt: f64,
    pub record_stride: usize,
    pub final_state: SpinorState,
}

impl TimeSeries {
    pub fn times(&self) -> impl Iterator<Item = f64> + '_ {
        self.samples.iter().map(|s| s.time)
    }

    pub fn sample_spacing(&self) -> f64 {
        self.dt * self.record_stride as f64
    }
}

fn sample(state: &SpinorState, ham: &Hamiltonian, analyzer: &LadderAnalyzer) -> Sample {
    Sample {
        time: state.time,
        report: analyzer.report(state),
        observables: observables(state, ham),
        sz_left: spin_z_halfwire(state, Side::Left),
        sz_right: spin_z_halfwire(state, Side::Right),
    }
}

/// Evolves `initial` to `config.t_final`, recording a sample at t = initial
/// time and after every `record_stride` steps.
pub fn run_evolution(initial: &SpinorState, config: &EvolutionConfig, ham: &Hamiltonian) -> Result<TimeSeries> {
    config.validate(ham.params.omega0)?;
    let analyzer = LadderAnalyzer::with_spectral(
        ham.grid().clone(),
        ham.spectral().clone(),
        LadderFrame::from_params(&ham.params),
    );
    let mut prop = Propagator::new(ham.clone(), config.dt);
    let mut state = initial.clone();
    let t0 = state.time;
    let mut densities = config.record_densities.then(DensityRecord::default);
    let mut samples = Vec::with_capacity(config.n_steps() / config.record_stride + 1);

    let mut record = |state: &SpinorState, samples: &mut Vec<Sample>| -> Result<()> {
        let edge = state.edge_density();
        if edge > EDGE_DENSITY_LIMIT {
            return Err(Error::DomainOverflow { time: state.time, edge_density: edge, limit: EDGE_DENSITY_LIMIT });
        }
        samples.push(sample(state, ham, &analyzer));
        if let Some(d) = densities.as_mut() {
            d.up.push(state.density(SpinBranch::Up));
            d.down.push(state.density(SpinBranch::Down));
        }
        Ok(())
    };

    record(&state, &mut samples)?;
    for n in 1..=config.n_steps() {
        prop.step(&mut state)?;
        state.time = t0 + n as f64 * config.dt;
        if n % config.record_stride == 0 {
            record(&state, &mut samples)?;
        }
    }
    Ok(TimeSeries { samples, densities, dt: config.dt, record_stride: config.record_stride, final_state: state })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RelaxConfig {
    #[serde(rename = "dtau_ps")]
    pub dtau: f64,
    /// Relative energy change per step below which relaxation stops.
    pub tol: f64,
    pub max_iterations: usize,
}

impl Default for RelaxConfig {
    fn default() -> Self {
        Self { dtau: 1e-3, tol: 1e-10, max_iterations: 200_000 }
    }
}

#[derive(Debug, Clone)]
pub struct RelaxOutcome {
    pub state: SpinorState,
    /// Energy of the normalised ground state, meV.
    pub energy: f64,
    pub iterations: usize,
    /// Energy after every step, starting with the seed.
    pub history: Vec<f64>,
}

/// Imaginary-time relaxation with the drive and barrier frozen at t = 0.
pub fn relax_imaginary_time(seed: &SpinorState, ham: &Hamiltonian, config: &RelaxConfig) -> Result<RelaxOutcome> {
    if !(config.dtau.is_finite() && config.dtau > 0.0) {
        return Err(Error::param("relaxation.dtau_ps", "must be > 0"));
    }
    let hbar = ham.params.hbar;
    let g = ham.gamma_e(0.0);
    let spectral = ham.spectral();
    let potential = ham.potential(0.0);
    let half_v: Vec<f64> = potential.iter().map(|&v| (-0.5 * v * config.dtau / hbar).exp()).collect();
    let kinetic_decay = |b: SpinBranch| -> Vec<f64> {
        ham.kinetic()
            .iter()
            .zip(&spectral.k)
            .map(|(&e, &k)| (-(e - b.sign() * g * k) * config.dtau / hbar).exp())
            .collect()
    };
    let decay = [kinetic_decay(SpinBranch::Up), kinetic_decay(SpinBranch::Down)];

    let mut state = seed.clone();
    state.time = 0.0;
    state.normalize();
    let mut energy = ham.energy(&state);
    let mut history = vec![energy];
    for it in 1..=config.max_iterations {
        for (i, b) in SpinBranch::BOTH.into_iter().enumerate() {
            let psi = state.component_mut(b);
            for (p, &h) in psi.iter_mut().zip(&half_v) {
                *p *= h;
            }
            spectral.forward(psi);
            for (p, &d) in psi.iter_mut().zip(&decay[i]) {
                *p *= d;
            }
            spectral.inverse(psi);
            for (p, &h) in psi.iter_mut().zip(&half_v) {
                *p *= h;
            }
        }
        state.normalize();
        if !state.is_finite() {
            return Err(Error::NumericalBlowup { time: 0.0, max_amplitude: state.max_amplitude() });
        }
        let e = ham.energy(&state);
        history.push(e);
        let change = ((e - energy) / e.abs().max(f64::MIN_POSITIVE)).abs();
        energy = e;
        if change < config.tol {
            return Ok(RelaxOutcome { state, energy, iterations: it, history });
        }
    }
    let last = history.len();
    let change = ((history[last - 1] - history[last - 2]) / history[last - 1]).abs();
    Err(Error::NotConverged { what: "imaginary-time relaxation", iterations: config.max_iterations, last: change })
}
