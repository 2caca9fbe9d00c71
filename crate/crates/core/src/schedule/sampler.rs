use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bits::mask;
use crate::error::{invalid, Result};
use crate::mixer::{MixerKind, MixerSpec};
use crate::poly::Polynomial;
use crate::problems::SymmetryTag;
use crate::rng::{rng_for, stream, Rng};
use crate::spectrum::{same_level, Spectrum};
use crate::TRANSFER_TIME_FACTOR;

/// Feasible sets up to this size are drawn from an explicit pool.
const POOL_LIMIT: u64 = 1 << 22;

/// Mean of the largest downhill half-gap over the samples at one energy.
#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GapEntry {
    pub energy: f64,
    pub mean_gap: f64,
    /// Samples folded into `mean_gap`.
    pub count: usize,
}

#[derive(Clone, Debug, Default, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SampledGaps {
    /// Ascending in `energy`; keys are distinct under [`same_level`].
    pub entries: Vec<GapEntry>,
    pub q_requested: usize,
    /// Samples drawn, including local minima that contributed no gap.
    pub q_used: usize,
}

impl SampledGaps {
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, energy: f64) -> Option<&GapEntry> {
        self.position(energy).ok().map(|i| &self.entries[i])
    }

    fn position(&self, energy: f64) -> core::result::Result<usize, usize> {
        let i = self.entries.partition_point(|e| e.energy < energy);
        for j in [i.wrapping_sub(1), i] {
            if self.entries.get(j).is_some_and(|e| same_level(e.energy, energy)) {
                return Ok(j);
            }
        }
        Err(i)
    }

    fn fold(&mut self, energy: f64, gap: f64) {
        match self.position(energy) {
            Ok(i) => {
                let e = &mut self.entries[i];
                e.count += 1;
                e.mean_gap += (gap - e.mean_gap) / e.count as f64;
            }
            Err(i) => self.entries.insert(i, GapEntry { energy, mean_gap: gap, count: 1 }),
        }
    }
}

/// Samples `q` distinct feasible decisions and records, per energy, the mean
/// of the largest half-gap to a strictly cheaper neighbor.
pub fn sample_gaps(
    poly: &Polynomial,
    spec: &MixerSpec,
    q: usize,
    symmetry: &SymmetryTag,
    seed: u64,
) -> Result<SampledGaps> {
    if poly.n() != spec.n() {
        return Err(crate::Error::DimensionMismatch { expected: spec.n(), found: poly.n() });
    }
    sample_gaps_with(|x| poly.evaluate_index(x), spec, q, symmetry, seed)
}

/// [`sample_gaps`] over an arbitrary cost oracle.
pub fn sample_gaps_with(
    cost: impl Fn(u64) -> f64,
    spec: &MixerSpec,
    q: usize,
    symmetry: &SymmetryTag,
    seed: u64,
) -> Result<SampledGaps> {
    let feasible = spec.feasible_count();
    if q == 0 {
        return Err(invalid("sample count q must be at least 1"));
    }
    if q as u64 > feasible {
        return Err(invalid(alloc::format!("q = {q} exceeds the {feasible} feasible states")));
    }
    let mut rng = rng_for(seed, stream::SAMPLER);
    let mut out = SampledGaps { q_requested: q, ..Default::default() };
    let mut visited = BTreeSet::new();
    let mut neighbors = Vec::new();
    let gap_scale = spec.mixer_gap();

    let mut visit = |x: u64, visited: &mut BTreeSet<u64>, out: &mut SampledGaps| {
        out.q_used += 1;
        visited.insert(x);
        if let Some(y) = symmetry.mate(x, spec.n()) {
            if spec.is_feasible(y) {
                visited.insert(y);
            }
        }
        let cx = cost(x);
        spec.neighbor_indices(x, &mut neighbors);
        let best = neighbors
            .iter()
            .map(|&y| cost(y))
            .filter(|&cy| cy < cx && !same_level(cy, cx))
            .map(|cy| (cx - cy) / gap_scale)
            .fold(None, |m: Option<f64>, d| Some(m.map_or(d, |m| m.max(d))));
        if let Some(gap) = best {
            out.fold(cx, gap);
        }
    };

    if feasible <= POOL_LIMIT {
        let mut pool = spec.feasible_states()?;
        let mut remaining = pool.len();
        while out.q_used < q && remaining > 0 {
            let j = rng.gen_range(0..remaining);
            let x = pool[j];
            pool.swap(j, remaining - 1);
            remaining -= 1;
            if !visited.contains(&x) {
                visit(x, &mut visited, &mut out);
            }
        }
    } else {
        while out.q_used < q && (visited.len() as u64) < feasible {
            let x = random_feasible(spec, &mut rng);
            if !visited.contains(&x) {
                visit(x, &mut visited, &mut out);
            }
        }
    }
    if out.q_used < q {
        log::info!("feasible set exhausted after {} of {q} samples", out.q_used);
    }
    Ok(out)
}

fn random_feasible(spec: &MixerSpec, rng: &mut Rng) -> u64 {
    match (spec.kind(), spec.hamming_weight()) {
        (MixerKind::XyRing, Some(k)) => sample(rng, spec.n(), k).into_iter().fold(0u64, |x, i| x | 1 << i),
        _ => rng.gen::<u64>() & mask(spec.n()),
    }
}

/// The energy-domain hopping rate: `(E, mean half-gap)` ascending in `E`.
pub fn gamma_of_energy(gaps: &SampledGaps) -> Vec<(f64, f64)> {
    gaps.entries.iter().map(|e| (e.energy, e.mean_gap)).collect()
}

/// Transfer time summed over every mixer edge joining two distinct cost
/// levels, with each edge's own optimal rate `|C_j - C_k| / 2`.
pub fn exact_transfer_time(spectrum: &Spectrum, spec: &MixerSpec) -> Result<f64> {
    if spectrum.n() != spec.n() {
        return Err(crate::Error::DimensionMismatch { expected: spec.n(), found: spectrum.n() });
    }
    let mut total = 0.0;
    let mut nb = Vec::new();
    for x in spec.feasible_states()? {
        spec.neighbor_indices(x, &mut nb);
        for &y in nb.iter().filter(|&&y| y > x) {
            let (cx, cy) = (spectrum.cost(x as usize), spectrum.cost(y as usize));
            if !same_level(cx, cy) {
                total += spec.mixer_gap() / (cx - cy).abs();
            }
        }
    }
    Ok(TRANSFER_TIME_FACTOR * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{gen_erdos_renyi, maxcut_poly};

    fn staircase() -> Polynomial {
        // C = (0, 1, 2, 3) on indices 0..4
        Polynomial::from_terms(2, [(alloc::vec![0], 1.0), (alloc::vec![1], 2.0)]).unwrap()
    }

    #[test]
    fn staircase_exact() {
        let spec = MixerSpec::x_hypercube(2).unwrap();
        let g = sample_gaps(&staircase(), &spec, 4, &SymmetryTag::None, 7).unwrap();
        assert_eq!(g.q_used, 4);
        assert_eq!(gamma_of_energy(&g), [(1.0, 0.5), (2.0, 1.0), (3.0, 1.0)]);
    }

    #[test]
    fn constant_cost_has_no_gaps() {
        let spec = MixerSpec::x_hypercube(3).unwrap();
        let p = Polynomial::constant(3, 2.5).unwrap();
        let g = sample_gaps(&p, &spec, 8, &SymmetryTag::None, 0).unwrap();
        assert!(g.is_empty());
        assert_eq!(g.q_used, 8);
    }

    #[test]
    fn single_lower_neighbor() {
        let spec = MixerSpec::x_hypercube(1).unwrap();
        let p = Polynomial::from_terms(1, [(alloc::vec![0], -4.0)]).unwrap();
        let g = sample_gaps(&p, &spec, 2, &SymmetryTag::None, 0).unwrap();
        assert_eq!(gamma_of_energy(&g), [(0.0, 2.0)]);
    }

    #[test]
    fn q_bounds() {
        let spec = MixerSpec::x_hypercube(2).unwrap();
        assert!(sample_gaps(&staircase(), &spec, 5, &SymmetryTag::None, 0).is_err());
        assert!(sample_gaps(&staircase(), &spec, 0, &SymmetryTag::None, 0).is_err());
    }

    #[test]
    fn symmetry_halves_the_pool() {
        let g = gen_erdos_renyi(6, 0.6, false, (1.0, 1.0), 1).unwrap();
        let p = maxcut_poly(&g).unwrap();
        let spec = MixerSpec::x_hypercube(6).unwrap();
        let s = sample_gaps(&p, &spec, 64, &SymmetryTag::GlobalBitFlip, 3).unwrap();
        assert_eq!(s.q_used, 32);
    }

    #[test]
    fn deterministic_under_seed() {
        let g = gen_erdos_renyi(8, 0.5, true, (-10.0, 10.0), 2).unwrap();
        let p = maxcut_poly(&g).unwrap();
        let spec = MixerSpec::x_hypercube(8).unwrap();
        let a = sample_gaps(&p, &spec, 64, &SymmetryTag::GlobalBitFlip, 11).unwrap();
        let b = sample_gaps(&p, &spec, 64, &SymmetryTag::GlobalBitFlip, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.entries.iter().all(|e| e.mean_gap > 0.0));
        assert!(a.entries.windows(2).all(|w| w[0].energy < w[1].energy && !same_level(w[0].energy, w[1].energy)));
    }

    #[test]
    fn ring_sampling_stays_feasible() {
        let spec = MixerSpec::xy_ring(6, 3).unwrap();
        let p = Polynomial::from_terms(6, (0..6).map(|i| (alloc::vec![i], i as f64))).unwrap();
        let g = sample_gaps(&p, &spec, 20, &SymmetryTag::None, 0).unwrap();
        assert_eq!(g.q_used, 20);
        // Weight-3 energies lie in 0+1+2 ..= 3+4+5.
        assert!(g.entries.iter().all(|e| (3.0..=12.0).contains(&e.energy)));
    }

    #[test]
    fn exact_transfer_time_two_levels() {
        let spec = MixerSpec::x_hypercube(1).unwrap();
        let s = Spectrum::from_costs(1, alloc::vec![1.0, -1.0], None).unwrap();
        // One edge with |ΔC| = 2, rate 1.
        assert!((exact_transfer_time(&s, &spec).unwrap() - TRANSFER_TIME_FACTOR).abs() < 1e-15);
    }
}
