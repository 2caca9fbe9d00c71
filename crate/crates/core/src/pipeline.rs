//! The full sample → build → discretize → evolve chain.

use crate::engine::{evolve_layer_plan, EvolutionTrace, EvolveOptions, Sense, DEFAULT_INNER_TROTTER};
use crate::error::{Error, Result};
use crate::metrics::DEFAULT_TOP_FRACTION;
use crate::mixer::MixerSpec;
use crate::poly::Polynomial;
use crate::problems::{Compiled, SymmetryTag};
use crate::schedule::{build_schedule, discretize, sample_gaps, LayerPlan, SampledGaps, Schedule, Slices};
use crate::spectrum::{Spectrum, SPECTRUM_CAP};
use crate::state::StateVector;

/// A compiled problem ready to run: the cost in minimization form, its
/// mixer, and its exact spectrum.
#[derive(Clone, Debug)]
pub struct Prepared {
    /// The cost as supplied.
    pub cost: Polynomial,
    /// `cost` or `-cost`, whichever is minimized.
    pub objective: Polynomial,
    pub symmetry: SymmetryTag,
    pub spec: MixerSpec,
    pub spectrum: Spectrum,
    pub sense: Sense,
}

impl Prepared {
    pub fn new(compiled: Compiled, spec: MixerSpec, sense: Sense) -> Result<Self> {
        Self::with_cap(compiled, spec, sense, SPECTRUM_CAP)
    }

    pub fn with_cap(compiled: Compiled, spec: MixerSpec, sense: Sense, cap: usize) -> Result<Self> {
        let Compiled { poly: cost, symmetry } = compiled;
        if cost.n() != spec.n() {
            return Err(Error::DimensionMismatch { expected: spec.n(), found: cost.n() });
        }
        let objective = match sense {
            Sense::Minimize => cost.clone(),
            Sense::Maximize => cost.scale(-1.0),
        };
        let mut spectrum = Spectrum::enumerate(&objective, cap)?;
        if spec.hamming_weight().is_some() {
            spectrum = spectrum.restrict(spec.feasible_mask()?)?;
        }
        Ok(Self { cost, objective, symmetry, spec, spectrum, sense })
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn initial_state(&self) -> Result<StateVector> {
        self.spec.initial_state()
    }
}

/// `n²` capped at the feasible count.
pub fn default_samples(spec: &MixerSpec) -> usize {
    let n = spec.n() as u64;
    (n * n).min(spec.feasible_count()) as usize
}

#[derive(Clone, Debug, PartialEq)]
pub struct SambaSettings {
    pub q: usize,
    pub seed: u64,
    pub slices: Slices,
    pub snapshot_every: usize,
    pub inner_trotter: usize,
    pub top_fraction: f64,
}

impl SambaSettings {
    pub fn new(q: usize, seed: u64, slices: Slices) -> Self {
        Self {
            q,
            seed,
            slices,
            snapshot_every: 1,
            inner_trotter: DEFAULT_INNER_TROTTER,
            top_fraction: DEFAULT_TOP_FRACTION,
        }
    }

    pub fn evolve_options(&self, sense: Sense) -> EvolveOptions {
        EvolveOptions {
            snapshot_every: self.snapshot_every,
            sense,
            inner_trotter: self.inner_trotter,
            top_fraction: self.top_fraction,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SambaRun {
    pub gaps: SampledGaps,
    pub schedule: Schedule,
    pub plan: LayerPlan,
    pub trace: EvolutionTrace,
}

/// Builds the schedule for `problem` without evolving.
pub fn build(problem: &Prepared, q: usize, seed: u64) -> Result<(SampledGaps, Schedule)> {
    let gaps = sample_gaps(&problem.objective, &problem.spec, q, &problem.symmetry, seed)?;
    let schedule = build_schedule(&gaps)?;
    Ok((gaps, schedule))
}

pub fn run_samba(problem: &Prepared, settings: &SambaSettings) -> Result<SambaRun> {
    let (gaps, schedule) = build(problem, settings.q, settings.seed)?;
    let plan = discretize(&schedule, &settings.slices)?;
    let trace = evolve_layer_plan(
        &problem.initial_state()?,
        &plan,
        &problem.spectrum,
        &problem.spec,
        &settings.evolve_options(problem.sense),
    )?;
    Ok(SambaRun { gaps, schedule, plan, trace })
}
