//! A z-polarised spin under the same drive stays a single coherent state: the
//! empty spin component never fills and no cat forms.
//!
//! ```text
//! cargo run --release --example single_coherent_state
//! ```

use spincat::runner::{simulate, summarize};
use spincat::Scenario;

fn main() -> spincat::Result<()> {
    let scenario = Scenario::fig4();
    let sim = simulate(&scenario)?;
    let summary = summarize(&scenario, &sim)?;
    let down = sim.series.samples.iter().map(|s| s.observables.norm_down).fold(0.0, f64::max);
    let (lo, hi) = sim
        .series
        .samples
        .iter()
        .filter_map(|s| s.report.c_up)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), c| (lo.min(c), hi.max(c)));
    println!("max ψ↓ norm       = {down:.3e}");
    println!("c↑ range          = [{lo:.4}, {hi:.4}]");
    println!("final α↑          = {:?}", summary.up);
    println!("single coherent   = {}", summary.flags.single_cs);
    Ok(())
}
