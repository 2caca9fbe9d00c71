use num_complex::Complex64;

use super::Sense;
use crate::error::{invalid, Error, Result};
use crate::mixer::{ring_bond_groups, MixerKind, MixerSpec};
use crate::spectrum::Spectrum;
use crate::state::StateVector;

/// Trotter repetitions of the even/odd bond sweep per ring-mixer layer.
pub const DEFAULT_INNER_TROTTER: usize = 4;

/// `a_x ← a_x · exp(-i dt C(x))`.
pub fn apply_cost_phase(state: &mut StateVector, costs: &Spectrum, dt: f64) -> Result<()> {
    if state.n() != costs.n() {
        return Err(Error::DimensionMismatch { expected: costs.n(), found: state.n() });
    }
    if dt == 0.0 {
        return Ok(());
    }
    for (a, &c) in state.amplitudes_mut().iter_mut().zip(costs.costs()) {
        let (s, co) = libm::sincos(-dt * c);
        *a *= Complex64::new(co, s);
    }
    Ok(())
}

/// `R_X(angle) = exp(-i angle X / 2)` on every qubit.
pub fn apply_x_mixer_layer(state: &mut StateVector, angle: f64) {
    if angle == 0.0 {
        return;
    }
    let (s, c) = libm::sincos(angle / 2.0);
    let (c, mis) = (Complex64::new(c, 0.0), Complex64::new(0.0, -s));
    let amps = state.amplitudes_mut();
    let dim = amps.len();
    for q in 0..state_n(dim) {
        let bit = 1usize << q;
        for base in (0..dim).step_by(bit << 1) {
            for i in base..base + bit {
                let (a, b) = (amps[i], amps[i | bit]);
                amps[i] = c * a + mis * b;
                amps[i | bit] = mis * a + c * b;
            }
        }
    }
}

fn state_n(dim: usize) -> usize {
    dim.trailing_zeros() as usize
}

/// First-order approximation of `exp(-i theta H_XY)` on the ring with
/// `H_XY = -Σ_bonds (|01⟩⟨10| + |10⟩⟨01|)`: `inner` sweeps over the
/// disjoint bond groups, each bond rotating by `theta / inner`.
pub fn apply_xy_ring_layer(state: &mut StateVector, theta: f64, inner: usize) -> Result<()> {
    let n = state.n();
    if n < 2 {
        return Err(invalid("ring mixer needs at least 2 qubits"));
    }
    if inner == 0 {
        return Err(invalid("inner Trotter count must be at least 1"));
    }
    if theta == 0.0 {
        return Ok(());
    }
    let (s, c) = libm::sincos(theta / inner as f64);
    let (c, is) = (Complex64::new(c, 0.0), Complex64::new(0.0, s));
    let groups = ring_bond_groups(n);
    let amps = state.amplitudes_mut();
    for _ in 0..inner {
        for group in &groups {
            for &(i, j) in group {
                let (bi, bj) = (1usize << i, 1usize << j);
                for x in 0..amps.len() {
                    // Visit each {…1_i…0_j…, …0_i…1_j…} pair once.
                    if x & bi != 0 && x & bj == 0 {
                        let y = x ^ bi ^ bj;
                        let (a, b) = (amps[x], amps[y]);
                        amps[x] = c * a + is * b;
                        amps[y] = is * a + c * b;
                    }
                }
            }
        }
    }
    Ok(())
}

/// `exp(-i theta H_M)` for the given mixer, in the given sense.
pub fn apply_mixer(state: &mut StateVector, spec: &MixerSpec, theta: f64, sense: Sense, inner: usize) -> Result<()> {
    if state.n() != spec.n() {
        return Err(Error::DimensionMismatch { expected: spec.n(), found: state.n() });
    }
    let theta = sense.sign() * theta;
    match spec.kind() {
        MixerKind::XHypercube => {
            apply_x_mixer_layer(state, -2.0 * theta);
            Ok(())
        }
        MixerKind::XyRing => apply_xy_ring_layer(state, theta, inner),
    }
}
