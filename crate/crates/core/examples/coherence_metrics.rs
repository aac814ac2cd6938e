//! Ladder-operator diagnostics on textbook states: a displaced Gaussian has
//! c = 1, while squeezed states and cat superpositions do not.
//!
//! ```text
//! cargo run --example coherence_metrics
//! ```

use std::sync::Arc;

use spincat::coherence::predicted_position;
use spincat::{Complex64, Grid1D, LadderAnalyzer, LadderFrame, PhysParams};

fn gaussian(grid: &Grid1D, x0: f64, k0: f64, width: f64) -> Vec<Complex64> {
    let v: Vec<Complex64> = grid
        .x
        .iter()
        .map(|&x| Complex64::from_polar((-(x - x0).powi(2) / (2.0 * width * width)).exp(), k0 * x))
        .collect();
    let n = (v.iter().map(|c| c.norm_sqr()).sum::<f64>() * grid.dx).sqrt();
    v.into_iter().map(|c| c / n).collect()
}

fn main() -> spincat::Result<()> {
    let p = PhysParams::default();
    let grid = Arc::new(Grid1D::new(1200.0, 4096)?);
    let frame = LadderFrame::from_params(&p);
    let ladder = LadderAnalyzer::new(grid.clone(), frame);
    let l = p.oscillator_length();

    println!("state,re_alpha,im_alpha,c,x_from_alpha_nm");
    let show = |name: &str, psi: &[Complex64]| -> spincat::Result<()> {
        let a = ladder.coherent_alpha(psi)?;
        let c = ladder.coherence_quality(psi)?;
        println!("{name},{:+.4},{:+.4},{c:.4},{:+.2}", a.re, a.im, predicted_position(a, &frame));
        Ok(())
    };
    show("coherent x0=100nm", &gaussian(&grid, 100.0, 0.0, l))?;
    show("coherent k0=0.01/nm", &gaussian(&grid, 50.0, 0.01, l))?;
    show("squeezed width=l/2", &gaussian(&grid, 100.0, 0.0, 0.5 * l))?;
    let (left, right) = (gaussian(&grid, -150.0, 0.0, l), gaussian(&grid, 150.0, 0.0, l));
    let cat: Vec<Complex64> = left.iter().zip(&right).map(|(a, b)| 0.8 * a + 0.6 * b).collect();
    let n = (cat.iter().map(|c| c.norm_sqr()).sum::<f64>() * grid.dx).sqrt();
    let cat: Vec<Complex64> = cat.into_iter().map(|c| c / n).collect();
    show("cat 0.8|-150nm> + 0.6|+150nm>", &cat)?;
    Ok(())
}
