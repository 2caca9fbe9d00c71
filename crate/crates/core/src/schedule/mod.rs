//! The classical offline stage: gap sampling, the piecewise-linear hopping
//! rate built from it, its discretization into circuit layers, and the
//! Bézier rate used as a tuned baseline.

mod bezier;
mod builder;
mod layers;
mod sampler;

use alloc::vec::Vec;

pub use bezier::{bezier_gamma, BezierSchedule, BEZIER_HIGH_EXP, BEZIER_LOW_EXP};
pub use builder::{build_schedule, Schedule};
pub use layers::{discretize, Layer, LayerPlan, Slices};
pub use sampler::{exact_transfer_time, gamma_of_energy, sample_gaps, sample_gaps_with, GapEntry, SampledGaps};

/// A time-dependent hopping rate `Γ(t)` on `[0, T]`.
pub trait HoppingRate {
    fn total_time(&self) -> f64;

    fn gamma(&self, t: f64) -> f64;

    /// Ends of the smooth pieces of `Γ`, starting at 0 and ending at `T`.
    fn breakpoints(&self) -> Vec<f64> {
        alloc::vec![0.0, self.total_time()]
    }
}

/// `Γ(t) = gamma` for `t ∈ [0, duration]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantRate {
    pub gamma: f64,
    pub duration: f64,
}

impl HoppingRate for ConstantRate {
    fn total_time(&self) -> f64 {
        self.duration
    }

    fn gamma(&self, _t: f64) -> f64 {
        self.gamma
    }
}
