use crate::error::Result;
use crate::poly::{Monomial, Polynomial};

use super::GraphInstance;

/// `C(x) = -Σ_{i<j} w_ij (x_i + x_j - 2 x_i x_j)`.
pub fn maxcut_poly(g: &GraphInstance) -> Result<Polynomial> {
    g.validate()?;
    let mut p = Polynomial::zero(g.n_vertices)?;
    for e in &g.edges {
        p.add_term(Monomial::from_vars(&[e.i])?, -e.weight);
        p.add_term(Monomial::from_vars(&[e.j])?, -e.weight);
        p.add_term(Monomial::from_vars(&[e.i, e.j])?, 2.0 * e.weight);
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::{direct, gen_erdos_renyi, GraphKind, SymmetryTag};
    use crate::spectrum::enumerate_spectrum;

    fn triangle() -> GraphInstance {
        GraphInstance::new(3, [(0, 1, 1.0), (0, 2, 1.0), (1, 2, 1.0)], GraphKind::Explicit).unwrap()
    }

    #[test]
    fn triangle_values() {
        let p = maxcut_poly(&triangle()).unwrap();
        assert_eq!(p.evaluate(&"010".parse().unwrap()).unwrap(), -2.0);
        assert_eq!(p.evaluate(&"000".parse().unwrap()).unwrap(), 0.0);
        assert_eq!(enumerate_spectrum(&p).unwrap().c_min(), -2.0);
    }

    #[test]
    fn matches_direct_and_is_flip_symmetric() {
        for seed in 0..5 {
            let g = gen_erdos_renyi(8, 0.5, true, (-10.0, 10.0), seed).unwrap();
            let p = maxcut_poly(&g).unwrap();
            for x in 0..256u64 {
                let d = direct::maxcut(&g, x);
                assert!((p.evaluate_index(x) - d).abs() <= 1e-12 * (1.0 + d.abs()));
            }
            assert!(SymmetryTag::GlobalBitFlip.holds_on(&p, 0..256));
        }
    }
}
