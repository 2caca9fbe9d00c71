//! Derivative-free tuning of the two baselines.

mod nelder_mead;
mod tune;

pub use nelder_mead::{nelder_mead, NelderMeadOptions, OptResult};
pub use tune::{gqw_final_state, tune_gqw, tune_qaoa, GqwObjective, GqwTuning, QaoaTuning, QAOA_ANGLE_BOUND};
