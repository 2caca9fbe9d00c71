//! State-vector evolution.
//!
//! [`evolve_layer_plan`] runs the layered circuit form; [`evolve_reference`]
//! integrates the continuous Hamiltonian `Γ(t) H_M + H_C` to machine
//! precision and is what the circuit form is measured against.

pub mod dense;
mod evolve;
mod gates;
mod hamiltonian;
mod qaoa;
mod reference;
mod shots;

pub use evolve::{evolve_layer_plan, EvolutionTrace, EvolveOptions};
pub use gates::{apply_cost_phase, apply_mixer, apply_x_mixer_layer, apply_xy_ring_layer, DEFAULT_INNER_TROTTER};
pub use hamiltonian::apply_hamiltonian;
pub use qaoa::qaoa_evolve;
pub use reference::{evolve_reference, REFERENCE_CAP};
pub use shots::{best_sampled, sample_counts};

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

/// Whether the cost is minimized or maximized.
///
/// Spectra, schedules and plans are always built for minimization, so in
/// maximize mode they describe `-C`. The engine then applies the phase of
/// the original `C` and flips the mixer angle, which conjugates the whole
/// unitary and leaves every probability unchanged.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum Sense {
    #[default]
    Minimize,
    Maximize,
}

impl Sense {
    /// `+1` for minimization, `-1` for maximization.
    pub fn sign(self) -> f64 {
        match self {
            Sense::Minimize => 1.0,
            Sense::Maximize => -1.0,
        }
    }
}
