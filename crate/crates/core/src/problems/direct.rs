//! Direct cost formulas, written against the problem statement and sharing
//! no code with the polynomial compilers.

use super::tsp::slot_codes;
use super::{GraphInstance, PortfolioInstance, SatInstance, TspInstance};

#[inline]
fn bit(x: u64, i: usize) -> bool {
    (x >> i) & 1 == 1
}

/// Negated weight of the edges crossing the cut.
pub fn maxcut(g: &GraphInstance, x: u64) -> f64 {
    -g.edges.iter().filter(|e| bit(x, e.i) != bit(x, e.j)).map(|e| e.weight).sum::<f64>()
}

/// Negated set weight plus `penalty` per edge inside the set.
pub fn mis(g: &GraphInstance, x: u64, penalty: f64) -> f64 {
    let weight: f64 = (0..g.n_vertices).filter(|&v| bit(x, v)).map(|v| g.vertex_weight(v)).sum();
    let violations = g.edges.iter().filter(|e| bit(x, e.i) && bit(x, e.j)).count();
    penalty * violations as f64 - weight
}

pub fn portfolio(inst: &PortfolioInstance, x: u64) -> f64 {
    let chosen: alloc::vec::Vec<usize> = (0..inst.n()).filter(|&i| bit(x, i)).collect();
    let ret: f64 = chosen.iter().map(|&i| inst.mu[i]).sum();
    let mut risk = 0.0;
    for (a, &i) in chosen.iter().enumerate() {
        for &j in &chosen[a + 1..] {
            risk += inst.sigma[i][j];
        }
    }
    inst.lambda * risk - ret
}

/// Sum of squared aperiodic autocorrelations of `s_i = ±1` (`x_i = 1` ↦ `-1`).
pub fn labs(n: usize, x: u64) -> f64 {
    let s = |i: usize| if bit(x, i) { -1i64 } else { 1 };
    (1..n)
        .map(|k| {
            let c: i64 = (0..n - k).map(|i| s(i) * s(i + k)).sum();
            (c * c) as f64
        })
        .sum()
}

pub fn satisfied_clauses(inst: &SatInstance, x: u64) -> usize {
    inst.clauses.iter().filter(|c| c.iter().any(|l| l.value(x))).count()
}

/// Penalized tour cost: `λ` per out-of-range code, `γ` per pair of equal
/// codes, plus `μ` times the length of every leg between two distinct valid
/// cities.
pub fn tsp(inst: &TspInstance, x: u64) -> f64 {
    let m = inst.num_cities();
    let w = inst.weights();
    let codes = slot_codes(x, m);
    let invalid = codes.iter().filter(|&&c| c >= m).count();
    let mut repeats = 0;
    for a in 0..m {
        for c in a + 1..m {
            if codes[a] == codes[c] {
                repeats += 1;
            }
        }
    }
    let mut length = 0.0;
    for k in 0..m {
        let (u, v) = (codes[k], codes[(k + 1) % m]);
        if u < m && v < m && u != v {
            length += inst.distances[u][v];
        }
    }
    w.lambda * invalid as f64 + w.gamma * repeats as f64 + w.mu * length
}
