//! Discretised 1D Hamiltonian: kinetic + Rashba terms diagonal in k per spin
//! branch, confinement and barrier diagonal in x.

use std::sync::Arc;

use crate::error::Result;
use crate::grid::Grid1D;
use crate::potential::{
    soi_term_momentum_phase, BarrierProtocol, ConfinementModel, DriveProtocol, SpinBranch,
    TimeReversedDrive,
};
use crate::spectral::Spectral;
use crate::state::SpinorState;
use crate::units::PhysParams;
use crate::Complex64;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    Forward(DriveProtocol),
    Reversed(TimeReversedDrive),
}

impl Drive {
    pub fn gamma_e(&self, t: f64) -> f64 {
        match self {
            Drive::Forward(d) => d.gamma_e(t),
            Drive::Reversed(d) => d.gamma_e(t),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Hamiltonian {
    pub params: PhysParams,
    pub confinement: ConfinementModel,
    pub drive: Drive,
    pub barrier: Option<BarrierProtocol>,
    grid: Arc<Grid1D>,
    spectral: Spectral,
    confinement_values: Vec<f64>,
    barrier_profile: Option<Vec<f64>>,
    kinetic: Vec<f64>,
}

impl Hamiltonian {
    pub fn new(
        grid: Arc<Grid1D>,
        params: PhysParams,
        confinement: ConfinementModel,
        drive: DriveProtocol,
        barrier: Option<BarrierProtocol>,
    ) -> Result<Self> {
        params.validate()?;
        confinement.validate()?;
        drive.validate()?;
        if let Some(b) = &barrier {
            b.validate()?;
        }
        let spectral = Spectral::new(&grid);
        let confinement_values = grid.x.iter().map(|&x| confinement.energy(x, &params)).collect();
        let barrier_profile = barrier.map(|b| grid.x.iter().map(|&x| b.profile(x)).collect());
        let kinetic = spectral.k.iter().map(|&k| 0.5 * params.hbar2_over_m * k * k).collect();
        Ok(Self {
            params,
            confinement,
            drive: Drive::Forward(drive),
            barrier,
            grid,
            spectral,
            confinement_values,
            barrier_profile,
            kinetic,
        })
    }

    /// Same Hamiltonian with the drive replaced by its time-reversed image
    /// over `[0, t_total]`.
    pub fn time_reversed(&self, t_total: f64) -> Self {
        let mut h = self.clone();
        if let Drive::Forward(d) = self.drive {
            h.drive = Drive::Reversed(d.time_reversed(t_total));
        }
        h
    }

    pub fn grid(&self) -> &Arc<Grid1D> {
        &self.grid
    }

    pub fn spectral(&self) -> &Spectral {
        &self.spectral
    }

    /// ħ²k²/2m on the FFT wavenumbers.
    pub fn kinetic(&self) -> &[f64] {
        &self.kinetic
    }

    pub fn gamma_e(&self, t: f64) -> f64 {
        self.drive.gamma_e(t)
    }

    pub fn barrier_height(&self, t: f64) -> f64 {
        self.barrier.map_or(0.0, |b| b.height(t))
    }

    /// Writes u(x) + barrier(x, t) into `out`.
    pub fn potential_into(&self, t: f64, out: &mut [f64]) {
        let h = self.barrier_height(t);
        match (&self.barrier_profile, h != 0.0) {
            (Some(prof), true) => {
                for ((o, &u), &p) in out.iter_mut().zip(&self.confinement_values).zip(prof) {
                    *o = u + h * p;
                }
            }
            _ => out.copy_from_slice(&self.confinement_values),
        }
    }

    pub fn potential(&self, t: f64) -> Vec<f64> {
        let mut v = vec![0.0; self.grid.n_points];
        self.potential_into(t, &mut v);
        v
    }

    /// H ψ_branch at time t.
    pub fn apply(&self, psi: &[Complex64], branch: SpinBranch, t: f64) -> Vec<Complex64> {
        let g = self.gamma_e(t);
        let mut buf = psi.to_vec();
        self.spectral.forward(&mut buf);
        for ((c, &ek), &k) in buf.iter_mut().zip(&self.kinetic).zip(&self.spectral.k) {
            *c *= ek + soi_term_momentum_phase(k, g, branch);
        }
        self.spectral.inverse(&mut buf);
        let v = self.potential(t);
        for ((o, p), vv) in buf.iter_mut().zip(psi).zip(&v) {
            *o += p * vv;
        }
        buf
    }

    /// ⟨ψ|H|ψ⟩ at the state's own time, meV. Not divided by the norm.
    pub fn energy(&self, state: &SpinorState) -> f64 {
        let dx = self.grid.dx;
        SpinBranch::BOTH
            .iter()
            .map(|&b| {
                let psi = state.component(b);
                let hpsi = self.apply(psi, b, state.time);
                psi.iter().zip(&hpsi).map(|(a, h)| (a.conj() * h).re).sum::<f64>() * dx
            })
            .sum()
    }
}
