//! Scores of a state against the exact spectrum of its cost function.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::spectrum::{Spectrum, INFEASIBLE};
use crate::state::StateVector;

/// Rank probabilities below this are hidden in displays.
pub const DISPLAY_THRESHOLD: f64 = 1e-3;

/// Default fraction of best ranks summed by [`top_fraction_probability`].
pub const DEFAULT_TOP_FRACTION: f64 = 0.05;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct MetricBundle {
    pub t: f64,
    pub quality: f64,
    pub participation_ratio: f64,
    /// Probability of each rank, best first.
    pub ranking_probs: Vec<f64>,
    pub top_fraction_prob: f64,
    /// Probability on feasible states.
    pub feasible_mass: f64,
}

impl MetricBundle {
    pub fn measure(state: &StateVector, spectrum: &Spectrum, t: f64, fraction: f64) -> Result<Self> {
        check_dims(state, spectrum)?;
        let probs = state.probabilities();
        Self::from_probabilities(&probs, spectrum, t, fraction)
    }

    pub fn from_probabilities(probs: &[f64], spectrum: &Spectrum, t: f64, fraction: f64) -> Result<Self> {
        if probs.len() != spectrum.dim() {
            return Err(Error::DimensionMismatch { expected: spectrum.dim(), found: probs.len() });
        }
        let ranking_probs = ranks_of(probs, spectrum);
        Ok(Self {
            t,
            quality: quality_of(probs, spectrum),
            participation_ratio: pr_of(probs),
            top_fraction_prob: top_of(&ranking_probs, fraction)?,
            feasible_mass: ranking_probs.iter().sum(),
            ranking_probs,
        })
    }

    /// Probability of the best rank.
    pub fn p0(&self) -> f64 {
        self.ranking_probs.first().copied().unwrap_or(0.0)
    }
}

fn check_dims(state: &StateVector, spectrum: &Spectrum) -> Result<()> {
    if state.n() != spectrum.n() {
        return Err(Error::DimensionMismatch { expected: spectrum.n(), found: state.n() });
    }
    Ok(())
}

fn quality_of(probs: &[f64], spectrum: &Spectrum) -> f64 {
    let (lo, hi) = (spectrum.c_min(), spectrum.c_max());
    let span = hi - lo;
    probs
        .iter()
        .enumerate()
        .filter(|&(x, _)| spectrum.is_feasible(x))
        .map(|(x, p)| if span > 0.0 { p * (hi - spectrum.cost(x)) / span } else { *p })
        .sum()
}

fn pr_of(probs: &[f64]) -> f64 {
    1.0 / (probs.len() as f64 * probs.iter().map(|p| p * p).sum::<f64>())
}

fn ranks_of(probs: &[f64], spectrum: &Spectrum) -> Vec<f64> {
    let mut out = alloc::vec![0.0; spectrum.num_ranks()];
    for (x, p) in probs.iter().enumerate() {
        let r = spectrum.ranking_of(x);
        if r != INFEASIBLE {
            out[r] += p;
        }
    }
    out
}

fn top_of(ranking_probs: &[f64], fraction: f64) -> Result<f64> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(invalid("top fraction must lie in (0, 1]"));
    }
    Ok(ranking_probs.iter().take(top_rank_count(ranking_probs.len(), fraction)).sum())
}

/// `⌈fraction · R⌉`, at least 1.
pub fn top_rank_count(num_ranks: usize, fraction: f64) -> usize {
    (libm::ceil(fraction * num_ranks as f64) as usize).clamp(1, num_ranks.max(1))
}

/// `Σ_x p(x) q(x)` with `q(x) = (C_max - C(x)) / (C_max - C_min)` on feasible
/// states and 0 elsewhere; 1 per unit of feasible mass on a constant spectrum.
pub fn quality_expectation(state: &StateVector, spectrum: &Spectrum) -> Result<f64> {
    check_dims(state, spectrum)?;
    Ok(quality_of(&state.probabilities(), spectrum))
}

/// `1 / (2^n Σ_x p(x)²)`.
pub fn participation_ratio(state: &StateVector) -> f64 {
    pr_of(&state.probabilities())
}

/// Probability mass of every rank, best first.
pub fn ranking_probabilities(state: &StateVector, spectrum: &Spectrum) -> Result<Vec<f64>> {
    check_dims(state, spectrum)?;
    Ok(ranks_of(&state.probabilities(), spectrum))
}

/// `(rank, probability)` pairs above `threshold`, for display.
pub fn displayed_rankings(ranking_probs: &[f64], threshold: f64) -> Vec<(usize, f64)> {
    ranking_probs.iter().copied().enumerate().filter(|&(_, p)| p > threshold).collect()
}

/// Probability of the best `⌈fraction · R⌉` ranks.
pub fn top_fraction_probability(state: &StateVector, spectrum: &Spectrum, fraction: f64) -> Result<f64> {
    top_of(&ranking_probabilities(state, spectrum)?, fraction)
}

/// `(C_max - F) / (C_max - C_min)` with `F` the expected cost over all states.
pub fn approx_ratio_tilde(state: &StateVector, spectrum: &Spectrum) -> Result<f64> {
    check_dims(state, spectrum)?;
    let span = spectrum.c_max() - spectrum.c_min();
    if !(span > 0.0) {
        return Err(Error::DegenerateSpectrum);
    }
    let f: f64 = state.probabilities().iter().enumerate().map(|(x, p)| p * spectrum.cost(x)).sum();
    Ok((spectrum.c_max() - f) / span)
}
