use alloc::vec::Vec;
use core::f64::consts::PI;

use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::nelder_mead::{nelder_mead, NelderMeadOptions, OptResult};
use crate::engine::{evolve_layer_plan, qaoa_evolve, EvolveOptions, Sense, DEFAULT_INNER_TROTTER};
use crate::error::{invalid, Error, Result};
use crate::metrics::{approx_ratio_tilde, MetricBundle, DEFAULT_TOP_FRACTION};
use crate::mixer::MixerSpec;
use crate::rng::{rng_for, stream};
use crate::schedule::{BezierSchedule, LayerPlan};
use crate::spectrum::Spectrum;
use crate::state::StateVector;

/// QAOA angles are searched in `[-π, π]`.
pub const QAOA_ANGLE_BOUND: f64 = PI;

const INIT_STREAM_OFFSET: u64 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GqwObjective {
    /// Expected quality of the final distribution.
    #[default]
    Quality,
    /// Probability of the best rank.
    P0,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GqwTuning {
    pub total_time: f64,
    /// Midpoint slices over `[0, T]`.
    pub slices: usize,
    /// Evaluations after the initial simplex; 0 scores the start point only.
    pub max_iter: usize,
    pub objective: GqwObjective,
    pub seed: u64,
    /// Start point; drawn uniformly from `[0, 1]⁶` when absent.
    pub x0: Option<[f64; 6]>,
    pub sense: Sense,
}

/// Final state of the Bézier-rate walk with parameters `theta`.
pub fn gqw_final_state(
    theta: &[f64; 6],
    total_time: f64,
    slices: usize,
    spectrum: &Spectrum,
    spec: &MixerSpec,
    initial: &StateVector,
    sense: Sense,
) -> Result<StateVector> {
    let plan = LayerPlan::from_rate(&BezierSchedule::new(*theta, total_time), slices)?;
    let opts = EvolveOptions {
        snapshot_every: 0,
        sense,
        inner_trotter: DEFAULT_INNER_TROTTER,
        top_fraction: DEFAULT_TOP_FRACTION,
    };
    Ok(evolve_layer_plan(initial, &plan, spectrum, spec, &opts)?.final_state)
}

/// Tunes the six Bézier parameters to maximize the chosen objective.
/// Values in the result are negated objectives.
pub fn tune_gqw(spectrum: &Spectrum, spec: &MixerSpec, initial: &StateVector, cfg: &GqwTuning) -> Result<OptResult> {
    if !(cfg.total_time > 0.0) {
        return Err(invalid("GQW evolution time must be positive"));
    }
    let x0 = match cfg.x0 {
        Some(x) => x,
        None => {
            let mut rng = rng_for(cfg.seed, stream::OPTIMIZER + INIT_STREAM_OFFSET);
            core::array::from_fn(|_| rng.gen::<f64>())
        }
    };
    let mut failure: Option<Error> = None;
    let mut score = |x: &[f64]| -> f64 {
        let theta: [f64; 6] = x.try_into().expect("six parameters");
        let value = gqw_final_state(&theta, cfg.total_time, cfg.slices, spectrum, spec, initial, cfg.sense)
            .and_then(|st| MetricBundle::measure(&st, spectrum, cfg.total_time, DEFAULT_TOP_FRACTION))
            .map(|m| match cfg.objective {
                GqwObjective::Quality => m.quality,
                GqwObjective::P0 => m.p0(),
            });
        match value {
            Ok(v) => -v,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    let result = run(&mut score, &x0, &[(0.0, 1.0); 6], cfg.max_iter, cfg.seed)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(result),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QaoaTuning {
    pub p: usize,
    pub max_iter: usize,
    pub seed: u64,
}

/// Tunes `2p` QAOA angles, drawn initially from `[-π, π]`, to maximize
/// the rescaled approximation ratio. Values in the result are `-r̃`.
pub fn tune_qaoa(spectrum: &Spectrum, spec: &MixerSpec, initial: &StateVector, cfg: &QaoaTuning) -> Result<OptResult> {
    if cfg.p == 0 {
        return Err(invalid("QAOA depth p must be at least 1"));
    }
    approx_ratio_tilde(initial, spectrum)?;
    let mut rng = rng_for(cfg.seed, stream::OPTIMIZER + INIT_STREAM_OFFSET);
    let x0: Vec<f64> = (0..2 * cfg.p).map(|_| rng.gen_range(-QAOA_ANGLE_BOUND..=QAOA_ANGLE_BOUND)).collect();
    let mut failure: Option<Error> = None;
    let mut score = |x: &[f64]| -> f64 {
        match qaoa_evolve(initial, x, spectrum, spec, DEFAULT_INNER_TROTTER)
            .and_then(|st| approx_ratio_tilde(&st, spectrum))
        {
            Ok(r) => -r,
            Err(e) => {
                failure.get_or_insert(e);
                f64::INFINITY
            }
        }
    };
    let bounds = alloc::vec![(-QAOA_ANGLE_BOUND, QAOA_ANGLE_BOUND); 2 * cfg.p];
    let result = run(&mut score, &x0, &bounds, cfg.max_iter, cfg.seed)?;
    match failure {
        Some(e) => Err(e),
        None => Ok(result),
    }
}

fn run(
    f: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    bounds: &[(f64, f64)],
    max_iter: usize,
    seed: u64,
) -> Result<OptResult> {
    if max_iter == 0 {
        let v = f(x0);
        return Ok(OptResult {
            best_params: x0.to_vec(),
            best_value: v,
            iterations_used: 0,
            history: alloc::vec![(x0.to_vec(), v)],
        });
    }
    nelder_mead(f, x0, bounds, &NelderMeadOptions { max_iter, seed, ..Default::default() })
}
