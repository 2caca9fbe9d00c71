use alloc::vec::Vec;

use super::gates::{apply_cost_phase, apply_mixer, DEFAULT_INNER_TROTTER};
use super::Sense;
use crate::error::{Error, Result};
use crate::metrics::{MetricBundle, DEFAULT_TOP_FRACTION};
use crate::mixer::MixerSpec;
use crate::schedule::LayerPlan;
use crate::spectrum::Spectrum;
use crate::state::StateVector;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EvolveOptions {
    /// Record metrics after every this many layers; 0 records only the
    /// initial and final states.
    pub snapshot_every: usize,
    pub sense: Sense,
    pub inner_trotter: usize,
    pub top_fraction: f64,
}

impl Default for EvolveOptions {
    fn default() -> Self {
        Self {
            snapshot_every: 1,
            sense: Sense::Minimize,
            inner_trotter: DEFAULT_INNER_TROTTER,
            top_fraction: DEFAULT_TOP_FRACTION,
        }
    }
}

#[derive(Clone, Debug)]
pub struct EvolutionTrace {
    /// Increasing; starts at 0 and ends at the plan's total time.
    pub sample_times: Vec<f64>,
    pub snapshots: Vec<MetricBundle>,
    pub final_state: StateVector,
}

/// Applies each layer as a cost phase of duration `dt` followed by the mixer
/// with integrated rate `theta`.
pub fn evolve_layer_plan(
    initial: &StateVector,
    plan: &LayerPlan,
    costs: &Spectrum,
    spec: &MixerSpec,
    opts: &EvolveOptions,
) -> Result<EvolutionTrace> {
    let n = initial.n();
    if costs.n() != n || spec.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if costs.n() != n { costs.n() } else { spec.n() } });
    }
    let mut state = initial.clone();
    let mut t = 0.0;
    let mut sample_times = alloc::vec![t];
    let mut snapshots = alloc::vec![MetricBundle::measure(&state, costs, t, opts.top_fraction)?];
    let sign = opts.sense.sign();
    for (i, layer) in plan.layers().iter().enumerate() {
        // Minimize mode: phase of `costs`. Maximize mode: `costs` holds -C, the phase uses C.
        apply_cost_phase(&mut state, costs, sign * layer.dt)?;
        apply_mixer(&mut state, spec, layer.theta, opts.sense, opts.inner_trotter)?;
        t += layer.dt;
        let last = i + 1 == plan.len();
        if last || (opts.snapshot_every > 0 && (i + 1) % opts.snapshot_every == 0) {
            sample_times.push(t);
            snapshots.push(MetricBundle::measure(&state, costs, t, opts.top_fraction)?);
        }
    }
    Ok(EvolutionTrace { sample_times, snapshots, final_state: state })
}
