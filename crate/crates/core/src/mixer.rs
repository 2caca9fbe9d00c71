//! Walk connectivity: the hypercube of single bit flips, or the ring of
//! adjacent swaps that preserves Hamming weight.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bits::{mask, BitString, MAX_BITS};
use crate::error::{invalid, Error, Result};
use crate::state::{StateVector, STATE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum MixerKind {
    XHypercube,
    XyRing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct MixerSpec {
    kind: MixerKind,
    n: usize,
    hamming_weight: Option<usize>,
}

impl MixerSpec {
    pub fn x_hypercube(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(invalid(alloc::format!("mixer width {n} outside 1..={MAX_BITS}")));
        }
        Ok(Self { kind: MixerKind::XHypercube, n, hamming_weight: None })
    }

    pub fn xy_ring(n: usize, k: usize) -> Result<Self> {
        if !(2..=MAX_BITS).contains(&n) {
            return Err(invalid(alloc::format!("ring mixer needs 2..={MAX_BITS} sites, got {n}")));
        }
        if k > n {
            return Err(invalid(alloc::format!("Hamming weight {k} exceeds n = {n}")));
        }
        Ok(Self { kind: MixerKind::XyRing, n, hamming_weight: Some(k) })
    }

    pub fn new(kind: MixerKind, n: usize, hamming_weight: Option<usize>) -> Result<Self> {
        match (kind, hamming_weight) {
            (MixerKind::XHypercube, _) => Self::x_hypercube(n),
            (MixerKind::XyRing, Some(k)) => Self::xy_ring(n, k),
            (MixerKind::XyRing, None) => Err(invalid("ring mixer needs a Hamming weight")),
        }
    }

    pub fn kind(&self) -> MixerKind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn hamming_weight(&self) -> Option<usize> {
        self.hamming_weight
    }

    /// Magnitude of the mixer's eigenvalue gap between the two states of a
    /// single transition; 2 for both kinds.
    pub fn mixer_gap(&self) -> f64 {
        2.0
    }

    pub fn is_feasible(&self, x: u64) -> bool {
        match self.hamming_weight {
            None => x & !mask(self.n) == 0,
            Some(k) => x & !mask(self.n) == 0 && x.count_ones() as usize == k,
        }
    }

    /// `2^n` for the hypercube, `C(n, k)` for the ring.
    pub fn feasible_count(&self) -> u64 {
        match self.hamming_weight {
            None => 1u64 << self.n,
            Some(k) => binomial(self.n as u64, k as u64),
        }
    }

    /// All feasible basis indices, ascending.
    pub fn feasible_states(&self) -> Result<Vec<u64>> {
        if self.n > STATE_CAP {
            return Err(Error::TooManyQubits { n: self.n, cap: STATE_CAP });
        }
        Ok((0..1u64 << self.n).filter(|&x| self.is_feasible(x)).collect())
    }

    pub fn feasible_mask(&self) -> Result<Vec<bool>> {
        if self.n > STATE_CAP {
            return Err(Error::TooManyQubits { n: self.n, cap: STATE_CAP });
        }
        Ok((0..1u64 << self.n).map(|x| self.is_feasible(x)).collect())
    }

    pub fn neighbors(&self, x: &BitString) -> Result<Vec<BitString>> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        if !self.is_feasible(x.index()) {
            return Err(invalid(alloc::format!("{x} has the wrong Hamming weight for this mixer")));
        }
        let mut out = Vec::new();
        self.neighbor_indices(x.index(), &mut out);
        out.into_iter().map(|y| BitString::new(y, self.n)).collect()
    }

    /// Writes the neighbors of feasible `x` into `out` (cleared first).
    pub fn neighbor_indices(&self, x: u64, out: &mut Vec<u64>) {
        out.clear();
        match self.kind {
            MixerKind::XHypercube => out.extend((0..self.n).map(|i| x ^ (1 << i))),
            MixerKind::XyRing => {
                for (i, j) in ring_bonds(self.n) {
                    if (x >> i) & 1 != (x >> j) & 1 {
                        let y = x ^ (1 << i) ^ (1 << j);
                        if !out.contains(&y) {
                            out.push(y);
                        }
                    }
                }
            }
        }
    }

    /// Equal superposition over the feasible set.
    pub fn initial_state(&self) -> Result<StateVector> {
        match self.hamming_weight {
            None => StateVector::uniform(self.n),
            Some(_) => StateVector::uniform_over(self.n, |x| self.is_feasible(x)),
        }
    }
}

/// Bonds `(i, i+1 mod n)` of the ring; a single bond for `n = 2`.
pub fn ring_bonds(n: usize) -> Vec<(usize, usize)> {
    match n {
        0 | 1 => Vec::new(),
        2 => alloc::vec![(0, 1)],
        _ => (0..n).map(|i| (i, (i + 1) % n)).collect(),
    }
}

/// Ring bonds split into groups of disjoint bonds: even, odd, and for odd
/// `n` the wrap-around bond on its own.
pub fn ring_bond_groups(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n == 2 {
        return alloc::vec![alloc::vec![(0, 1)]];
    }
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for i in 0..n.saturating_sub(1) {
        if i % 2 == 0 {
            even.push((i, i + 1))
        } else {
            odd.push((i, i + 1))
        }
    }
    let mut groups = alloc::vec![even];
    if n >= 3 {
        if n.is_multiple_of(2) {
            odd.push((n - 1, 0));
            groups.push(odd);
        } else {
            groups.push(odd);
            groups.push(alloc::vec![(n - 1, 0)]);
        }
    }
    groups.retain(|g| !g.is_empty());
    groups
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}
