//! Relax under a constant Rashba coupling, then switch it off: the dressed
//! ground state becomes a coherent state of fixed amplitude in the bare trap.
//!
//! ```text
//! cargo run --release --example soi_quench
//! ```

use std::sync::Arc;

use spincat::oracle::{quench_amplitude, soi_wavevector};
use spincat::propagator::{relax_imaginary_time, run_evolution};
use spincat::{
    Complex64, ConfinementModel, DriveProtocol, EvolutionConfig, Grid1D, Hamiltonian, PhysParams, RelaxConfig,
    SpinorState,
};

fn main() -> spincat::Result<()> {
    let p = PhysParams::default();
    let grid = Arc::new(Grid1D::new(1200.0, 4096)?);
    let trap = ConfinementModel::parabola(p.omega0);
    let width = p.oscillator_length();
    let up = grid.x.iter().map(|&x| Complex64::new((-x * x / (2.0 * width * width)).exp(), 0.0)).collect();
    let mut seed = SpinorState::new(grid.clone(), up, vec![Complex64::new(0.0, 0.0); grid.n_points], 0.0)?;
    seed.normalize();

    println!("gamma_e_mev_nm,max_abs_alpha,closed_form");
    for gamma in [10.0, 20.0, 40.0, 60.0] {
        let on = Hamiltonian::new(grid.clone(), p, trap, DriveProtocol::constant(gamma), None)?;
        let dressed = relax_imaginary_time(&seed, &on, &RelaxConfig::default())?.state;
        let off = Hamiltonian::new(grid.clone(), p, trap, DriveProtocol::off(), None)?;
        let cfg = EvolutionConfig { dt: 5e-4, t_final: p.period(), record_stride: 100, record_densities: false };
        let after = run_evolution(&dressed, &cfg, &off)?;
        let max = after.samples.iter().filter_map(|s| s.report.alpha_up).map(|a| a.norm()).fold(0.0, f64::max);
        println!("{gamma},{max:.4},{:.4}", quench_amplitude(soi_wavevector(gamma, &p), &p));
    }
    Ok(())
}
