//! Two-component spinor on the wire and its basic observables.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::hamiltonian::Hamiltonian;
use crate::potential::SpinBranch;
use crate::Complex64;

/// Components whose norm is below this are treated as empty.
pub const EMPTY_COMPONENT_NORM: f64 = 1e-12;

/// Spin preparation of the initial state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SpinOrientation {
    XPlus,
    ZPlus,
    ZMinus,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// ψ = (ψ↑, ψ↓)ᵀ sampled on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState {
    pub grid: Arc<Grid1D>,
    pub up: Vec<Complex64>,
    pub down: Vec<Complex64>,
    /// Simulation time in ps.
    pub time: f64,
}

impl SpinorState {
    pub fn new(grid: Arc<Grid1D>, up: Vec<Complex64>, down: Vec<Complex64>, time: f64) -> Result<Self> {
        if up.len() != grid.n_points || down.len() != grid.n_points {
            return Err(Error::InvalidGrid(format!(
                "component lengths {}/{} do not match grid size {}",
                up.len(),
                down.len(),
                grid.n_points
            )));
        }
        Ok(Self { grid, up, down, time })
    }

    pub fn zeros(grid: Arc<Grid1D>) -> Self {
        let n = grid.n_points;
        let z = vec![Complex64::new(0.0, 0.0); n];
        Self { grid, up: z.clone(), down: z, time: 0.0 }
    }

    pub fn component(&self, branch: SpinBranch) -> &[Complex64] {
        match branch {
            SpinBranch::Up => &self.up,
            SpinBranch::Down => &self.down,
        }
    }

    pub fn component_mut(&mut self, branch: SpinBranch) -> &mut Vec<Complex64> {
        match branch {
            SpinBranch::Up => &mut self.up,
            SpinBranch::Down => &mut self.down,
        }
    }

    pub fn component_norm(&self, branch: SpinBranch) -> f64 {
        component_norm(self.component(branch), self.grid.dx)
    }

    pub fn norm(&self) -> f64 {
        self.component_norm(SpinBranch::Up) + self.component_norm(SpinBranch::Down)
    }

    /// Rescales both components so the total norm is 1.
    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 0.0 {
            let s = 1.0 / n.sqrt();
            self.up.iter_mut().chain(self.down.iter_mut()).for_each(|c| *c *= s);
        }
    }

    /// ⟨φ|ψ⟩ summed over both components.
    pub fn inner(&self, other: &SpinorState) -> Complex64 {
        let dx = self.grid.dx;
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
            a.iter().zip(b).map(|(x, y)| x.conj() * y).sum::<Complex64>()
        };
        (dot(&self.up, &other.up) + dot(&self.down, &other.down)) * dx
    }

    /// Largest |ψ|² among the two boundary samples of either component.
    pub fn edge_density(&self) -> f64 {
        let n = self.grid.n_points;
        [self.up[0], self.up[n - 1], self.down[0], self.down[n - 1]]
            .iter()
            .map(|c| c.norm_sqr())
            .fold(0.0, f64::max)
    }

    pub fn max_amplitude(&self) -> f64 {
        self.up.iter().chain(&self.down).map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.up.iter().chain(&self.down).all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// ⟨x⟩ of one component normalised by that component's norm; `None` when
    /// the component is empty.
    pub fn mean_position(&self, branch: SpinBranch) -> Option<f64> {
        let psi = self.component(branch);
        let norm = component_norm(psi, self.grid.dx);
        if norm < EMPTY_COMPONENT_NORM {
            return None;
        }
        let m = self.grid.integrate(psi.iter().zip(&self.grid.x).map(|(c, &x)| x * c.norm_sqr()));
        Some(m / norm)
    }

    /// ⟨σ_z⟩ over the whole wire.
    pub fn sigma_z(&self) -> f64 {
        self.component_norm(SpinBranch::Up) - self.component_norm(SpinBranch::Down)
    }

    /// ⟨σ_x⟩ = 2 Re ∫ψ↑*ψ↓ dx.
    pub fn sigma_x(&self) -> f64 {
        let s: Complex64 = self.up.iter().zip(&self.down).map(|(u, d)| u.conj() * d).sum();
        2.0 * s.re * self.grid.dx
    }

    pub fn density(&self, branch: SpinBranch) -> Vec<f64> {
        self.component(branch).iter().map(|c| c.norm_sqr()).collect()
    }
}

pub fn component_norm(psi: &[Complex64], dx: f64) -> f64 {
    psi.iter().map(|c| c.norm_sqr()).sum::<f64>() * dx
}

/// Builds the spin-x or spin-z initial state from a real ground-state envelope.
///
/// `x_plus` gives (e^{iq₀x}, e^{−iq₀x})ᵀψ₀/√2, `z_plus` gives (e^{iq₀x}, 0)ᵀψ₀
/// and `z_minus` gives (0, e^{−iq₀x})ᵀψ₀. A negative `q0` is accepted and
/// simply reverses the twist.
pub fn prepare_initial_state(
    grid: Arc<Grid1D>,
    envelope: &[f64],
    orientation: SpinOrientation,
    q0: f64,
) -> Result<SpinorState> {
    if envelope.len() != grid.n_points {
        return Err(Error::InvalidGrid("envelope length does not match grid".into()));
    }
    let norm = grid.integrate(envelope.iter().map(|v| v * v));
    if (norm - 1.0).abs() > 1e-6 {
        return Err(Error::Unnormalized { norm });
    }
    if envelope.iter().any(|&v| v < 0.0 || !v.is_finite()) {
        return Err(Error::param("envelope", "must be real and non-negative"));
    }
    let twisted = |sign: f64, scale: f64| -> Vec<Complex64> {
        envelope
            .iter()
            .zip(&grid.x)
            .map(|(&e, &x)| Complex64::from_polar(e * scale, sign * q0 * x))
            .collect()
    };
    let zero = vec![Complex64::new(0.0, 0.0); grid.n_points];
    let (up, down) = match orientation {
        SpinOrientation::XPlus => {
            let s = std::f64::consts::FRAC_1_SQRT_2;
            (twisted(1.0, s), twisted(-1.0, s))
        }
        SpinOrientation::ZPlus => (twisted(1.0, 1.0), zero),
        SpinOrientation::ZMinus => (zero, twisted(-1.0, 1.0)),
    };
    SpinorState::new(grid, up, down, 0.0)
}

/// Snapshot of the quantities plotted against time.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Observables {
    pub norm_up: f64,
    pub norm_down: f64,
    pub x_up: Option<f64>,
    pub x_down: Option<f64>,
    pub sigma_z: f64,
    pub sigma_x: f64,
    /// Total energy under the Hamiltonian at the state's time, meV.
    pub energy: f64,
}

pub fn observables(state: &SpinorState, hamiltonian: &Hamiltonian) -> Observables {
    Observables {
        norm_up: state.component_norm(SpinBranch::Up),
        norm_down: state.component_norm(SpinBranch::Down),
        x_up: state.mean_position(SpinBranch::Up),
        x_down: state.mean_position(SpinBranch::Down),
        sigma_z: state.sigma_z(),
        sigma_x: state.sigma_x(),
        energy: hamiltonian.energy(state),
    }
}

/// ∫_side (|ψ↑|² − |ψ↓|²) dx in units of ħ/2, not normalised, so the two
/// halves add up to the global ⟨σ_z⟩. The sample at x = 0 is split evenly.
pub fn spin_z_halfwire(state: &SpinorState, side: Side) -> f64 {
    let dx = state.grid.dx;
    let mut acc = 0.0;
    for ((u, d), &x) in state.up.iter().zip(&state.down).zip(&state.grid.x) {
        let w = if x == 0.0 {
            0.5
        } else {
            match side {
                Side::Left if x < 0.0 => 1.0,
                Side::Right if x > 0.0 => 1.0,
                _ => 0.0,
            }
        };
        acc += w * (u.norm_sqr() - d.norm_sqr());
    }
    acc * dx
}
