//! Closed-form results for the harmonic trap with Rashba coupling.
//!
//! These serve as independent references for the numerical propagation:
//! the Rashba wavevector and energy shift, the displaced ground state, the
//! linearly growing displacement under resonant driving, and the amplitude
//! created by a sudden switch-off of the coupling.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::grid::Grid1D;
use crate::potential::SpinBranch;
use crate::units::PhysParams;
use crate::Complex64;

/// Minimum number of grid points per ground-state width 1/√β.
pub const MIN_POINTS_PER_WIDTH: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SoiAnalytics {
    /// Rashba wavevector, nm⁻¹.
    pub q: f64,
    /// Energy lowering ħ²q²/2m, meV.
    pub delta_e: f64,
    /// β = mω/2ħ, nm⁻².
    pub beta: f64,
    /// ζ = mħω, momentum scale squared (meV²·ps²/nm²).
    pub zeta: f64,
    /// |ξ| = (γE/ħ)√(m/2ħω).
    pub xi: f64,
}

impl SoiAnalytics {
    pub fn new(gamma_e: f64, params: &PhysParams) -> Self {
        let q = soi_wavevector(gamma_e, params);
        let m = params.mass();
        let w = params.omega0;
        let hbar = params.hbar;
        Self {
            q,
            delta_e: 0.5 * params.hbar2_over_m * q * q,
            beta: m * w / (2.0 * hbar),
            zeta: m * hbar * w,
            xi: gamma_e.abs() / hbar * (m / (2.0 * hbar * w)).sqrt(),
        }
    }
}

/// q = mγE/ħ².
pub fn soi_wavevector(gamma_e: f64, params: &PhysParams) -> f64 {
    gamma_e / params.hbar2_over_m
}

/// ΔE = ħ²q²/2m.
pub fn soi_energy_shift(gamma_e: f64, params: &PhysParams) -> f64 {
    SoiAnalytics::new(gamma_e, params).delta_e
}

/// (β/2π)^{1/4}·exp(−βx²)·exp(±iqx), renormalised by quadrature on the grid.
pub fn soi_ground_state(grid: &Grid1D, q: f64, beta: f64, branch: SpinBranch) -> Result<Vec<Complex64>> {
    if !(beta.is_finite() && beta > 0.0) {
        return Err(Error::param("beta", "must be > 0"));
    }
    let points = 1.0 / beta.sqrt() / grid.dx;
    if points < MIN_POINTS_PER_WIDTH {
        return Err(Error::UnderResolved { points_per_width: points, required: MIN_POINTS_PER_WIDTH });
    }
    let pref = (beta / (2.0 * std::f64::consts::PI)).powf(0.25);
    let s = branch.sign();
    let mut psi: Vec<Complex64> =
        grid.x.iter().map(|&x| Complex64::from_polar(pref * (-beta * x * x).exp(), s * q * x)).collect();
    let norm = grid.integrate(psi.iter().map(|c| c.norm_sqr())).sqrt();
    psi.iter_mut().for_each(|c| *c /= norm);
    Ok(psi)
}

/// d|α|/dt = √(mω/2ħ)·γE₀/(2ħ), ps⁻¹.
pub fn magnus_slope(gamma_e0: f64, params: &PhysParams) -> f64 {
    let beta = params.mass() * params.omega0 / (2.0 * params.hbar);
    beta.sqrt() * gamma_e0 / (2.0 * params.hbar)
}

/// Secular displacement ∓ s·t·e^{−iωt} with s = [`magnus_slope`], for a drive
/// γE₀cos(ωt) and the branch energies ħ²k²/2m ∓ γE·k used by the propagator.
///
/// The phase convention matches a = x/(√2·l) + i·l·p/(√2·ħ), under which a
/// free coherent state evolves as α(0)·e^{−iωt}. Writing the result as
/// s·t·e^{+iωt} is the same displacement in the conjugate convention.
pub fn magnus_alpha(t: f64, gamma_e0: f64, params: &PhysParams, branch: SpinBranch) -> Complex64 {
    -branch.sign() * Complex64::from_polar(magnus_slope(gamma_e0, params) * t, -params.omega0 * t)
}

/// Position track ∓(γE₀/2ħ)·t·cos(ωt) of the resonantly driven branch, nm.
pub fn magnus_position(t: f64, gamma_e0: f64, params: &PhysParams, branch: SpinBranch) -> f64 {
    -branch.sign() * gamma_e0 / (2.0 * params.hbar) * t * (params.omega0 * t).cos()
}

/// |α| = q·√(ħ/2mω) gained by each branch when the coupling is switched off
/// suddenly from its ground state.
pub fn quench_amplitude(q: f64, params: &PhysParams) -> f64 {
    q * (params.hbar2_over_m / (2.0 * params.hbar_omega())).sqrt()
}

/// One row of the oracle table.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleRow {
    pub gamma_e: f64,
    pub analytics: SoiAnalytics,
    pub slope: f64,
    pub quench_alpha: f64,
    pub time_to_alpha2: Option<f64>,
}

pub fn oracle_row(gamma_e: f64, params: &PhysParams) -> OracleRow {
    let analytics = SoiAnalytics::new(gamma_e, params);
    let slope = magnus_slope(gamma_e, params);
    OracleRow {
        gamma_e,
        analytics,
        slope,
        quench_alpha: quench_amplitude(analytics.q, params),
        time_to_alpha2: (slope > 0.0).then(|| 2.0 / slope),
    }
}

/// γE values tabulated by default, meV·nm.
pub const DEFAULT_TABLE_GAMMAS: [f64; 6] = [0.0, 5.0, 10.0, 20.0, 40.0, 80.0];

/// Deterministic CSV table of closed-form values for the given couplings.
pub fn oracle_tables(params: &PhysParams, gammas: &[f64]) -> String {
    let mut out = String::from(
        "gamma_e_mev_nm,q_per_nm,delta_e_mev,beta_per_nm2,xi,slope_per_ps,quench_alpha,t_alpha2_ps\n",
    );
    for &g in gammas {
        let r = oracle_row(g, params);
        let t2 = r.time_to_alpha2.map(|t| format!("{t:.6}")).unwrap_or_default();
        out.push_str(&format!(
            "{:.3},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{:.9e},{}\n",
            g, r.analytics.q, r.analytics.delta_e, r.analytics.beta, r.analytics.xi, r.slope, r.quench_alpha, t2
        ));
    }
    out
}
