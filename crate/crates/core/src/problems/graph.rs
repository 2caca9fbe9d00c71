use alloc::vec::Vec;

use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::{rng_for, stream};

#[derive(Clone, Copy, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Edge {
    pub i: usize,
    pub j: usize,
    pub weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum GraphKind {
    ErdosRenyi,
    UnitDisk,
    Complete,
    #[default]
    Explicit,
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GraphInstance {
    pub n_vertices: usize,
    pub edges: Vec<Edge>,
    #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
    pub vertex_weights: Option<Vec<f64>>,
    #[cfg_attr(feature = "serde", serde(default))]
    pub kind: GraphKind,
}

impl GraphInstance {
    /// Builds and validates a graph; edge endpoints are normalized to `i < j`.
    pub fn new(
        n_vertices: usize,
        edges: impl IntoIterator<Item = (usize, usize, f64)>,
        kind: GraphKind,
    ) -> Result<Self> {
        let edges = edges.into_iter().map(|(a, b, weight)| Edge { i: a.min(b), j: a.max(b), weight }).collect();
        let g = Self { n_vertices, edges, vertex_weights: None, kind };
        g.validate()?;
        Ok(g)
    }

    pub fn with_vertex_weights(mut self, w: Vec<f64>) -> Result<Self> {
        self.vertex_weights = Some(w);
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_vertices == 0 {
            return Err(invalid("graph has no vertices"));
        }
        let mut seen = alloc::collections::BTreeSet::new();
        for e in &self.edges {
            if e.i >= e.j {
                return Err(invalid(alloc::format!("edge ({}, {}) must satisfy i < j", e.i, e.j)));
            }
            if e.j >= self.n_vertices {
                return Err(invalid(alloc::format!("edge ({}, {}) out of range", e.i, e.j)));
            }
            if !seen.insert((e.i, e.j)) {
                return Err(invalid(alloc::format!("duplicate edge ({}, {})", e.i, e.j)));
            }
        }
        if let Some(w) = &self.vertex_weights {
            if w.len() != self.n_vertices {
                return Err(invalid("vertex weight count differs from vertex count"));
            }
        }
        Ok(())
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|e| e.i == v || e.j == v).count()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n_vertices * (self.n_vertices - 1) / 2
    }

    pub fn vertex_weight(&self, v: usize) -> f64 {
        self.vertex_weights.as_ref().map_or(1.0, |w| w[v])
    }

    pub fn max_abs_edge_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |m, e| m.max(e.weight.abs()))
    }
}

/// G(n, p) graph. Weights are uniform in `w_range` when `weighted`, else 1.
pub fn gen_erdos_renyi(n: usize, p_edge: f64, weighted: bool, w_range: (f64, f64), seed: u64) -> Result<GraphInstance> {
    if n < 2 {
        return Err(invalid("Erdős–Rényi graph needs n >= 2"));
    }
    if !(0.0..=1.0).contains(&p_edge) {
        return Err(invalid("edge probability must lie in [0, 1]"));
    }
    if weighted && !(w_range.0 <= w_range.1) {
        return Err(invalid("weight range must satisfy lo <= hi"));
    }
    let mut rng = rng_for(seed, stream::GRAPH);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen::<f64>() < p_edge {
                let w = if weighted { w_range.0 + (w_range.1 - w_range.0) * rng.gen::<f64>() } else { 1.0 };
                edges.push((i, j, w));
            }
        }
    }
    let kind = if p_edge >= 1.0 { GraphKind::Complete } else { GraphKind::ErdosRenyi };
    GraphInstance::new(n, edges, kind)
}

/// Radius at which two uniform points of the unit square are within reach
/// with probability 1/2, i.e. `πr² - 8r³/3 + r⁴/2 = 1/2`.
pub const UNIT_DISK_HALF_DENSITY_RADIUS: f64 = 0.512_0;

/// Unit-disk graph on points uniform in `[0, box_size]²`, with degree-centrality
/// vertex weights `w_i = 1 + 10 C_D(i) / max_j C_D(j)`.
pub fn gen_unit_disk(n: usize, radius: f64, box_size: f64, seed: u64) -> Result<GraphInstance> {
    if n < 2 {
        return Err(invalid("unit-disk graph needs n >= 2"));
    }
    if !(radius > 0.0) || !(box_size > 0.0) {
        return Err(invalid("radius and box size must be positive"));
    }
    let mut rng = rng_for(seed, stream::GRAPH);
    let pts: Vec<(f64, f64)> = (0..n).map(|_| (box_size * rng.gen::<f64>(), box_size * rng.gen::<f64>())).collect();
    let pts_ref = &pts;
    let edges = (0..n).flat_map(move |i| {
        (i + 1..n).filter_map(move |j| {
            let (dx, dy) = (pts_ref[i].0 - pts_ref[j].0, pts_ref[i].1 - pts_ref[j].1);
            (dx * dx + dy * dy <= radius * radius).then_some((i, j, 1.0))
        })
    });
    let g = GraphInstance::new(n, edges.collect::<Vec<_>>(), GraphKind::UnitDisk)?;
    let weights = degree_centrality_weights(&g);
    g.with_vertex_weights(weights)
}

/// `w_i = 1 + 10 C_D(i) / max_j C_D(j)` with `C_D(i) = deg(i) / (n - 1)`;
/// all ones when the graph has no edges.
pub fn degree_centrality_weights(g: &GraphInstance) -> Vec<f64> {
    let n = g.n_vertices;
    let centrality: Vec<f64> = (0..n).map(|v| g.degree(v) as f64 / (n - 1) as f64).collect();
    let max = centrality.iter().cloned().fold(0.0, f64::max);
    if max == 0.0 {
        return alloc::vec![1.0; n];
    }
    centrality.iter().map(|c| 1.0 + 10.0 * c / max).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_probability_gives_triangle() {
        let g = gen_erdos_renyi(3, 1.0, false, (1.0, 1.0), 0).unwrap();
        assert_eq!(g.edges.len(), 3);
        assert!(g.is_complete());
        assert!(g.edges.iter().all(|e| e.weight == 1.0));
    }

    #[test]
    fn zero_probability_gives_no_edges() {
        let g = gen_erdos_renyi(8, 0.0, true, (-10.0, 10.0), 3).unwrap();
        assert!(g.edges.is_empty());
    }

    #[test]
    fn generation_is_deterministic() {
        let a = gen_erdos_renyi(20, 0.5, true, (-10.0, 10.0), 42).unwrap();
        let b = gen_erdos_renyi(20, 0.5, true, (-10.0, 10.0), 42).unwrap();
        assert_eq!(a, b);
        let c = gen_erdos_renyi(20, 0.5, true, (-10.0, 10.0), 43).unwrap();
        assert_ne!(a, c);
        assert!(a.edges.iter().all(|e| (-10.0..=10.0).contains(&e.weight)));
        assert!(gen_erdos_renyi(1, 0.5, false, (1.0, 1.0), 0).is_err());
    }

    #[test]
    fn unit_disk_close_pair() {
        let g = gen_unit_disk(2, 10.0, 1.0, 5).unwrap();
        assert_eq!(g.edges.len(), 1);
        assert_eq!(g.vertex_weights.as_deref(), Some(&[11.0, 11.0][..]));
    }

    #[test]
    fn unit_disk_far_apart() {
        let g = gen_unit_disk(5, 1e-9, 1.0, 5).unwrap();
        assert!(g.edges.is_empty());
        assert_eq!(g.vertex_weights.as_deref(), Some(&[1.0; 5][..]));
    }

    #[test]
    fn unit_disk_deterministic() {
        let a = gen_unit_disk(10, UNIT_DISK_HALF_DENSITY_RADIUS, 1.0, 9).unwrap();
        assert_eq!(a, gen_unit_disk(10, UNIT_DISK_HALF_DENSITY_RADIUS, 1.0, 9).unwrap());
        let w = a.vertex_weights.unwrap();
        assert!(w.iter().all(|&x| (1.0..=11.0).contains(&x)));
        assert!(w.contains(&11.0));
    }

    #[test]
    fn half_density_radius() {
        let r = UNIT_DISK_HALF_DENSITY_RADIUS;
        let p = core::f64::consts::PI * r * r - 8.0 * r * r * r / 3.0 + r * r * r * r / 2.0;
        assert!((p - 0.5).abs() < 1e-3, "{p}");
    }

    #[test]
    fn rejects_bad_graphs() {
        assert!(GraphInstance::new(3, [(0, 1, 1.0), (1, 0, 1.0)], GraphKind::Explicit).is_err());
        assert!(GraphInstance::new(3, [(0, 3, 1.0)], GraphKind::Explicit).is_err());
        assert!(GraphInstance::new(3, [(1, 1, 1.0)], GraphKind::Explicit).is_err());
    }
}
