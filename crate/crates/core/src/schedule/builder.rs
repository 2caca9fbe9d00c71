use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::{HoppingRate, SampledGaps};
use crate::error::{invalid, Error, Result};
use crate::spectrum::same_level;
use crate::TRANSFER_TIME_FACTOR;

/// Piecewise-linear hopping rate through the nodes `(s_{l-1}, e_l)` and a
/// terminal `(T, 0)`.
///
/// Segment `l` starts at level `e_l`, lasts `τ_l = π / (2√2 e_l)` and ends
/// at the next level (or 0 for the last one).
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Schedule {
    levels: Vec<f64>,
    durations: Vec<f64>,
    #[cfg_attr(feature = "serde", serde(skip))]
    node_times: Vec<f64>,
    total_time: f64,
}

pub fn build_schedule(gaps: &SampledGaps) -> Result<Schedule> {
    if gaps.is_empty() {
        return Err(Error::NoDescendingTransitions);
    }
    Schedule::from_levels(gaps.entries.iter().map(|e| e.mean_gap).collect())
}

impl Schedule {
    /// Sorts `levels` decreasing and merges equal ones. Every level must be
    /// positive and finite.
    pub fn from_levels(mut levels: Vec<f64>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::NoDescendingTransitions);
        }
        if levels.iter().any(|&e| !(e > 0.0) || !e.is_finite()) {
            return Err(invalid("schedule levels must be positive and finite"));
        }
        levels.sort_by(|a, b| b.total_cmp(a));
        levels.dedup_by(|b, a| same_level(*a, *b));
        let durations: Vec<f64> = levels.iter().map(|e| TRANSFER_TIME_FACTOR / e).collect();
        let mut node_times = Vec::with_capacity(levels.len() + 1);
        let mut s = 0.0;
        node_times.push(s);
        for d in &durations {
            s += d;
            node_times.push(s);
        }
        Ok(Self { levels, durations, node_times, total_time: s })
    }

    /// Nonzero levels, strictly decreasing.
    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    pub fn durations(&self) -> &[f64] {
        &self.durations
    }

    /// `s_0 = 0, …, s_q = T`.
    pub fn node_times(&self) -> &[f64] {
        &self.node_times
    }

    pub fn total_time(&self) -> f64 {
        self.total_time
    }

    pub fn num_segments(&self) -> usize {
        self.levels.len()
    }

    /// Rate at node `l`; 0 at the terminal node.
    pub fn node_gamma(&self, l: usize) -> f64 {
        self.levels.get(l).copied().unwrap_or(0.0)
    }

    /// Interpolation nodes `(s_l, Γ_l)` including the terminal `(T, 0)`.
    pub fn nodes(&self) -> Vec<(f64, f64)> {
        self.node_times.iter().enumerate().map(|(l, &t)| (t, self.node_gamma(l))).collect()
    }

    /// Linear interpolation between nodes; `t` outside `[0, T]` is clamped.
    pub fn gamma_at(&self, t: f64) -> f64 {
        let t = if (0.0..=self.total_time).contains(&t) {
            t
        } else {
            log::warn!("gamma_at({t}) outside [0, {}], clamping", self.total_time);
            t.clamp(0.0, self.total_time)
        };
        let l = self.node_times.partition_point(|&s| s <= t).saturating_sub(1);
        if l == self.levels.len() {
            return 0.0;
        }
        let frac = ((t - self.node_times[l]) / self.durations[l]).clamp(0.0, 1.0);
        let (a, b) = (self.node_gamma(l), self.node_gamma(l + 1));
        a * (1.0 - frac) + b * frac
    }
}

impl HoppingRate for Schedule {
    fn total_time(&self) -> f64 {
        self.total_time
    }

    fn gamma(&self, t: f64) -> f64 {
        self.gamma_at(t)
    }

    fn breakpoints(&self) -> Vec<f64> {
        self.node_times.clone()
    }
}

#[cfg(feature = "serde")]
impl Schedule {
    /// Rebuilds the derived node times after deserialization.
    pub fn revalidate(self) -> Result<Self> {
        let s = Self::from_levels(self.levels)?;
        if s.durations.len() != self.durations.len()
            || s.durations.iter().zip(&self.durations).any(|(a, b)| !same_level(*a, *b))
        {
            return Err(invalid("schedule durations do not match its levels"));
        }
        Ok(s)
    }
}
