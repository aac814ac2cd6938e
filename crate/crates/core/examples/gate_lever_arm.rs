//! Lateral field at the wire axis per volt of antiphase side-gate drive, and
//! its convergence under grid refinement.
//!
//! ```text
//! cargo run --release --example gate_lever_arm
//! ```

use spincat::electrostatics::{lever_arm, DeviceStack, SolverOptions, INSB_GAMMA_3D_NM2};

fn main() -> spincat::Result<()> {
    let stack = DeviceStack::default();
    let opts = SolverOptions::default();
    println!("cell_nm,lever_arm_per_nm");
    let mut finest = 0.0;
    for cell in [10.0, 5.0, 2.5, 1.25] {
        finest = lever_arm(&stack.with_cell(cell), &opts)?;
        println!("{cell},{finest:.6e}");
    }
    let v_lr = 0.5;
    let gamma_e = INSB_GAMMA_3D_NM2 * finest * v_lr * 1e3;
    println!("γ₃D|e|E_y at V_lr = {v_lr} V: {gamma_e:.1} meV·nm");
    Ok(())
}
