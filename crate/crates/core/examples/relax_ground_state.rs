//! Imaginary-time relaxation of the trap ground state, with the drive off and
//! with the coupling frozen at its t = 0 value.
//!
//! ```text
//! cargo run --release --example relax_ground_state [fig2|fig3|fig4|path.toml]
//! ```

use spincat::oracle::soi_energy_shift;
use spincat::runner::relax_report;
use spincat::Scenario;

fn main() -> spincat::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "fig2".into());
    let scenario = Scenario::resolve(&spec)?;
    let r = relax_report(&scenario)?;
    let p = scenario.physics;
    println!("E (drive off)      = {:.6} meV   ħω/2 = {:.6}", r.energy_drive_off_mev, r.zero_point_mev);
    println!("E (coupling at t0) = {:.6} meV", r.energy_at_t0_mev);
    println!(
        "Rashba shift       = {:.6} meV   closed form {:.6}",
        r.soi_shift_mev,
        soi_energy_shift(p.gamma_e_amplitude, &p)
    );
    println!("iterations         = {}", r.iterations);
    Ok(())
}
