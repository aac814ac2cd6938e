//! Simulation of spin-dependent coherent states of a single electron trapped
//! in a gated nanowire and driven by a resonantly oscillating Rashba
//! spin-orbit interaction.
//!
//! The crate is organised bottom-up:
//!
//! - [`units`], [`grid`], [`state`]: physical constants, the 1D grid and the
//!   two-component spinor with its basic observables.
//! - [`potential`]: confinement, lateral drive and barrier protocols.
//! - [`hamiltonian`], [`propagator`]: split-step spectral evolution in real
//!   and imaginary time.
//! - [`coherence`]: ladder-operator diagnostics (coherent amplitude, quality
//!   metric, predicted positions).
//! - [`oracle`]: closed-form reference results used to validate the numerics.
//! - [`electrostatics`]: 2D cross-section Poisson solver giving the side-gate
//!   lever arm.
//! - [`scenario`], [`runner`]: TOML scenarios, presets and run artifacts.
//!
//! Runnable walkthroughs of each capability live in `examples/`.

pub mod coherence;
pub mod electrostatics;
pub mod error;
pub mod grid;
pub mod hamiltonian;
pub mod oracle;
pub mod potential;
pub mod propagator;
pub mod runner;
pub mod scenario;
pub mod spectral;
pub mod state;
pub mod units;

pub use rustfft::num_complex::Complex64;

pub use crate::coherence::{CoherenceReport, LadderAnalyzer, LadderFrame};
pub use crate::error::{Error, Result};
pub use crate::grid::Grid1D;
pub use crate::hamiltonian::Hamiltonian;
pub use crate::potential::{
    BarrierProtocol, ConfinementForm, ConfinementModel, DriveMode, DriveProtocol, SpinBranch,
};
pub use crate::propagator::{EvolutionConfig, Propagator, RelaxConfig, TimeSeries};
pub use crate::scenario::Scenario;
pub use crate::state::{Observables, Side, SpinOrientation, SpinorState};
pub use crate::units::PhysParams;
