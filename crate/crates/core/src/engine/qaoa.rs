use super::gates::{apply_cost_phase, apply_mixer};
use super::Sense;
use crate::error::{invalid, Result};
use crate::mixer::MixerSpec;
use crate::spectrum::Spectrum;
use crate::state::StateVector;

/// `Π_k exp(-i β_k H_M) exp(-i γ_k H_C)` applied to `initial`, with
/// `angles = [γ_1, β_1, γ_2, β_2, …]`.
pub fn qaoa_evolve(
    initial: &StateVector,
    angles: &[f64],
    costs: &Spectrum,
    spec: &MixerSpec,
    inner_trotter: usize,
) -> Result<StateVector> {
    if !angles.len().is_multiple_of(2) {
        return Err(invalid("QAOA needs an even number of angles"));
    }
    let mut state = initial.clone();
    for pair in angles.chunks_exact(2) {
        apply_cost_phase(&mut state, costs, pair[0])?;
        apply_mixer(&mut state, spec, pair[1], Sense::Minimize, inner_trotter)?;
    }
    Ok(state)
}
