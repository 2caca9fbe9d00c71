//! Binary-coded TSP: slot `i` of the tour holds the city index in
//! `b = ⌈log₂ m⌉` bits, most significant first, on variables `i·b .. i·b + b`.

use alloc::vec::Vec;

use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bits::BitString;
use crate::error::{invalid, Result};
use crate::poly::Polynomial;
use crate::rng::{rng_for, stream};

use super::GraphInstance;

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TspInstance {
    /// `m × m` distances; the diagonal is ignored.
    pub distances: Vec<Vec<f64>>,
    /// Tour-length weight (default 1).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub mu: Option<f64>,
    /// Invalid-code penalty (default `2 μ max w`).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub lambda: Option<f64>,
    /// Repeated-city penalty (default `2 μ max w`).
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub gamma: Option<f64>,
}

/// Resolved cost weights.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TspWeights {
    pub mu: f64,
    pub lambda: f64,
    pub gamma: f64,
}

impl TspInstance {
    pub fn new(distances: Vec<Vec<f64>>) -> Result<Self> {
        let inst = Self { distances, mu: None, lambda: None, gamma: None };
        inst.validate()?;
        Ok(inst)
    }

    /// Distances from a complete weighted graph.
    pub fn from_graph(g: &GraphInstance) -> Result<Self> {
        g.validate()?;
        if !g.is_complete() {
            return Err(invalid("TSP needs a complete graph"));
        }
        let m = g.n_vertices;
        let mut d = alloc::vec![alloc::vec![0.0; m]; m];
        for e in &g.edges {
            d[e.i][e.j] = e.weight;
            d[e.j][e.i] = e.weight;
        }
        Self::new(d)
    }

    pub fn num_cities(&self) -> usize {
        self.distances.len()
    }

    pub fn bits_per_city(&self) -> usize {
        bits_per_city(self.num_cities())
    }

    pub fn num_qubits(&self) -> usize {
        self.num_cities() * self.bits_per_city()
    }

    pub fn validate(&self) -> Result<()> {
        let m = self.num_cities();
        if m < 2 {
            return Err(invalid("TSP needs at least 2 cities"));
        }
        if self.distances.iter().any(|row| row.len() != m) {
            return Err(invalid("distance matrix must be square"));
        }
        if m * bits_per_city(m) > crate::bits::MAX_BITS {
            return Err(invalid("too many cities for a 63-bit encoding"));
        }
        Ok(())
    }

    pub fn max_distance(&self) -> f64 {
        let m = self.num_cities();
        (0..m)
            .flat_map(|u| (0..m).filter(move |&v| v != u).map(move |v| (u, v)))
            .fold(0.0, |acc, (u, v)| acc.max(self.distances[u][v].abs()))
    }

    pub fn weights(&self) -> TspWeights {
        let mu = self.mu.unwrap_or(1.0);
        let default_penalty = 2.0 * mu * self.max_distance();
        TspWeights { mu, lambda: self.lambda.unwrap_or(default_penalty), gamma: self.gamma.unwrap_or(default_penalty) }
    }

    pub fn tour_length(&self, route: &[usize]) -> f64 {
        let m = route.len();
        (0..m).map(|k| self.distances[route[k]][route[(k + 1) % m]]).sum()
    }
}

/// Random symmetric distances uniform in `range`.
#[allow(clippy::needless_range_loop)]
pub fn gen_tsp(m: usize, range: (f64, f64), seed: u64) -> Result<TspInstance> {
    if !(range.0 <= range.1) {
        return Err(invalid("distance range must satisfy lo <= hi"));
    }
    let mut rng = rng_for(seed, stream::TSP);
    let mut d = alloc::vec![alloc::vec![0.0; m]; m];
    for u in 0..m {
        for v in u + 1..m {
            let w = range.0 + (range.1 - range.0) * rng.gen::<f64>();
            d[u][v] = w;
            d[v][u] = w;
        }
    }
    TspInstance::new(d)
}

pub fn bits_per_city(m: usize) -> usize {
    if m <= 1 {
        1
    } else {
        (usize::BITS - (m - 1).leading_zeros()) as usize
    }
}

#[inline]
fn slot_var(b: usize, slot: usize, bitpos: usize) -> usize {
    slot * b + (b - 1 - bitpos)
}

/// City codes of each slot, read from `x`.
pub fn slot_codes(x: u64, m: usize) -> Vec<usize> {
    let b = bits_per_city(m);
    (0..m).map(|slot| (0..b).map(|j| (((x >> slot_var(b, slot, j)) & 1) as usize) << j).sum()).collect()
}

pub fn tsp_encode(route: &[usize]) -> Result<BitString> {
    let m = route.len();
    let mut seen = alloc::vec![false; m];
    for &c in route {
        if c >= m || core::mem::replace(&mut seen[c], true) {
            return Err(invalid("route must be a permutation of 0..m"));
        }
    }
    let b = bits_per_city(m);
    let mut x = 0u64;
    for (slot, &city) in route.iter().enumerate() {
        for j in 0..b {
            x |= (((city >> j) & 1) as u64) << slot_var(b, slot, j);
        }
    }
    BitString::new(x, m * b)
}

/// The tour encoded by `x`, or `None` if a code is out of range or a city repeats.
pub fn tsp_decode(x: &BitString, m: usize) -> Option<Vec<usize>> {
    if m < 2 || x.len() != m * bits_per_city(m) {
        return None;
    }
    let codes = slot_codes(x.index(), m);
    let mut seen = alloc::vec![false; m];
    for &c in &codes {
        if c >= m || core::mem::replace(&mut seen[c], true) {
            return None;
        }
    }
    Some(codes)
}

pub fn tsp_poly(inst: &TspInstance) -> Result<Polynomial> {
    inst.validate()?;
    let m = inst.num_cities();
    let b = bits_per_city(m);
    let n = m * b;
    let w = inst.weights();
    let bit_is = |slot: usize, j: usize, one: bool| {
        if one {
            Polynomial::var(n, slot_var(b, slot, j))
        } else {
            Polynomial::not_var(n, slot_var(b, slot, j))
        }
    };

    // [slot holds city c]
    let holds: Vec<Vec<Polynomial>> = (0..m)
        .map(|slot| {
            (0..m)
                .map(|c| {
                    (0..b)
                        .try_fold(Polynomial::constant(n, 1.0)?, |acc, j| acc.mul(&bit_is(slot, j, (c >> j) & 1 == 1)?))
                })
                .collect::<Result<_>>()
        })
        .collect::<Result<_>>()?;

    let mut cost = Polynomial::zero(n)?;

    // Out-of-range codes: the highest differing bit against m-1 is a zero bit of m-1 set to 1.
    let top = m - 1;
    for slot in 0..m {
        for j in (0..b).filter(|&j| (top >> j) & 1 == 0) {
            let mut term = Polynomial::var(n, slot_var(b, slot, j))?;
            for hi in j + 1..b {
                term = term.mul(&bit_is(slot, hi, (top >> hi) & 1 == 1)?)?;
            }
            cost = cost.add(&term.scale(w.lambda))?;
        }
    }

    // Equal codes in two slots.
    for a in 0..m {
        for c in a + 1..m {
            let mut eq = Polynomial::constant(n, 1.0)?;
            for j in 0..b {
                let (xa, xc) = (Polynomial::var(n, slot_var(b, a, j))?, Polynomial::var(n, slot_var(b, c, j))?);
                let same = Polynomial::constant(n, 1.0)?.sub(&xa)?.sub(&xc)?.add(&xa.mul(&xc)?.scale(2.0))?;
                eq = eq.mul(&same)?;
            }
            cost = cost.add(&eq.scale(w.gamma))?;
        }
    }

    // Tour length over consecutive slots, wrapping around.
    for slot in 0..m {
        let next = (slot + 1) % m;
        for u in 0..m {
            for v in (0..m).filter(|&v| v != u) {
                let d = inst.distances[u][v];
                if d != 0.0 {
                    cost = cost.add(&holds[slot][u].mul(&holds[next][v])?.scale(w.mu * d))?;
                }
            }
        }
    }
    Ok(cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::direct;
    use crate::spectrum::enumerate_spectrum;

    fn permutations(m: usize) -> Vec<Vec<usize>> {
        if m == 0 {
            return alloc::vec![Vec::new()];
        }
        let mut out = Vec::new();
        for p in permutations(m - 1) {
            for pos in 0..m {
                let mut q = p.clone();
                q.insert(pos, m - 1);
                out.push(q);
            }
        }
        out
    }

    #[test]
    fn encoding_layout() {
        let x = tsp_encode(&[0, 3, 1, 5, 2, 4]).unwrap();
        assert_eq!(alloc::string::String::from(x), "000011001101010100");
        assert_eq!(bits_per_city(2), 1);
        assert_eq!(bits_per_city(4), 2);
        assert_eq!(bits_per_city(5), 3);
    }

    #[test]
    fn round_trip_all_permutations() {
        for r in permutations(4) {
            assert_eq!(tsp_decode(&tsp_encode(&r).unwrap(), 4), Some(r));
        }
        assert!(tsp_encode(&[0, 0, 1]).is_err());
    }

    #[test]
    fn unit_distances_minimum() {
        let d = (0..4).map(|u| (0..4).map(|v| if u == v { 0.0 } else { 1.0 }).collect()).collect();
        let inst = TspInstance::new(d).unwrap();
        let p = tsp_poly(&inst).unwrap();
        assert_eq!(enumerate_spectrum(&p).unwrap().c_min(), 4.0);
        for r in permutations(4) {
            assert_eq!(p.evaluate(&tsp_encode(&r).unwrap()).unwrap(), 4.0);
        }
    }

    #[test]
    fn matches_direct_and_tour_lengths() {
        for (m, seed) in [(3, 1), (4, 2), (5, 3)] {
            let inst = gen_tsp(m, (0.0, 1.0), seed).unwrap();
            let p = tsp_poly(&inst).unwrap();
            let n = inst.num_qubits();
            for x in 0..1u64 << n {
                let d = direct::tsp(&inst, x);
                assert!((p.evaluate_index(x) - d).abs() <= 1e-12 * (1.0 + d.abs()) * 10.0, "m={m} x={x}");
                if let Some(route) = tsp_decode(&BitString::new(x, n).unwrap(), m) {
                    assert!((d - inst.tour_length(&route)).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn incomplete_graph_rejected() {
        let g = GraphInstance::new(3, [(0, 1, 1.0)], crate::problems::GraphKind::Explicit).unwrap();
        assert!(TspInstance::from_graph(&g).is_err());
    }
}
