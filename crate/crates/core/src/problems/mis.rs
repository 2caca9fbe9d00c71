use crate::error::{invalid, Result};
use crate::poly::{Monomial, Polynomial};

use super::GraphInstance;

/// `max_{(i,j) ∈ E} (w_i + w_j) + 1`, or 1 for an edgeless graph.
pub fn default_penalty(g: &GraphInstance) -> f64 {
    g.edges
        .iter()
        .map(|e| g.vertex_weight(e.i) + g.vertex_weight(e.j))
        .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))))
        .map_or(1.0, |m| m + 1.0)
}

/// `C(x) = -Σ w_i x_i + λ Σ_{(i,j) ∈ E} x_i x_j` with the default penalty.
pub fn mis_poly(g: &GraphInstance) -> Result<Polynomial> {
    mis_poly_with_penalty(g, default_penalty(g))
}

pub fn mis_poly_with_penalty(g: &GraphInstance, penalty: f64) -> Result<Polynomial> {
    g.validate()?;
    if !(penalty > 0.0) {
        return Err(invalid("MIS penalty must be positive"));
    }
    let mut p = Polynomial::zero(g.n_vertices)?;
    for v in 0..g.n_vertices {
        p.add_term(Monomial::from_vars(&[v])?, -g.vertex_weight(v));
    }
    for e in &g.edges {
        p.add_term(Monomial::from_vars(&[e.i, e.j])?, penalty);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{direct, gen_unit_disk, GraphKind};
    use crate::spectrum::enumerate_spectrum;

    fn path() -> GraphInstance {
        GraphInstance::new(3, [(0, 1, 1.0), (1, 2, 1.0)], GraphKind::Explicit).unwrap()
    }

    #[test]
    fn path_values() {
        let g = path();
        assert_eq!(default_penalty(&g), 3.0);
        let p = mis_poly(&g).unwrap();
        assert_eq!(p.evaluate(&"101".parse().unwrap()).unwrap(), -2.0);
        assert_eq!(p.evaluate(&"111".parse().unwrap()).unwrap(), 3.0);
        let s = enumerate_spectrum(&p).unwrap();
        assert_eq!(s.c_min(), -2.0);
        assert_eq!(s.rank_sizes()[0], 1);
        assert_eq!(s.argmin(), 0b101);
    }

    #[test]
    fn edgeless_penalty_is_one() {
        let g = GraphInstance::new(3, [], GraphKind::Explicit).unwrap();
        assert_eq!(default_penalty(&g), 1.0);
    }

    #[test]
    fn penalty_override_and_direct() {
        let g = gen_unit_disk(8, 0.5, 1.0, 4).unwrap();
        for lambda in [2.0, default_penalty(&g)] {
            let p = mis_poly_with_penalty(&g, lambda).unwrap();
            for x in 0..256u64 {
                assert!((p.evaluate_index(x) - direct::mis(&g, x, lambda)).abs() < 1e-12 * 100.0);
            }
        }
        assert!(mis_poly_with_penalty(&g, 0.0).is_err());
    }
}
