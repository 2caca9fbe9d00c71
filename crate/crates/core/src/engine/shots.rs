use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::Rng as _;

use crate::rng::{rng_for, stream};
use crate::spectrum::{Spectrum, INFEASIBLE};
use crate::state::StateVector;

/// `shots` computational-basis measurements of `state`, as index → count.
pub fn sample_counts(state: &StateVector, shots: usize, seed: u64) -> BTreeMap<u64, usize> {
    let mut cumulative: Vec<f64> = state
        .probabilities()
        .into_iter()
        .scan(0.0, |acc, p| {
            *acc += p;
            Some(*acc)
        })
        .collect();
    let total = cumulative.last().copied().unwrap_or(0.0);
    if let Some(last) = cumulative.last_mut() {
        *last = f64::INFINITY;
    }
    let mut rng = rng_for(seed, stream::SHOTS);
    let mut counts = BTreeMap::new();
    for _ in 0..shots {
        let u = rng.gen::<f64>() * total;
        let x = cumulative.partition_point(|&c| c <= u);
        *counts.entry(x as u64).or_insert(0) += 1;
    }
    counts
}

/// The cheapest feasible sampled state and its cost.
pub fn best_sampled(counts: &BTreeMap<u64, usize>, spectrum: &Spectrum) -> Option<(u64, f64)> {
    counts
        .keys()
        .filter(|&&x| spectrum.ranking_of(x as usize) != INFEASIBLE)
        .map(|&x| (x, spectrum.cost(x as usize)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
}
