//! Problem families and their compilation to cost polynomials.
//!
//! Every family has two evaluators: the compiled [`Polynomial`] and a direct
//! formula in [`direct`] that never touches the polynomial machinery. The
//! two are cross-checked in the tests.

pub mod direct;
pub mod graph;
pub mod labs;
pub mod maxcut;
pub mod mis;
pub mod portfolio;
pub mod sat;
pub mod tsp;

use alloc::string::String;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::mixer::MixerSpec;
use crate::poly::Polynomial;

pub use graph::{
    degree_centrality_weights, gen_erdos_renyi, gen_unit_disk, Edge, GraphInstance, GraphKind,
    UNIT_DISK_HALF_DENSITY_RADIUS,
};
pub use labs::labs_poly;
pub use maxcut::maxcut_poly;
pub use mis::{mis_poly, mis_poly_with_penalty};
pub use portfolio::{gen_portfolio, portfolio_poly, PortfolioInstance};
pub use sat::{gen_maxksat, maxksat_poly, Literal, SatInstance};
pub use tsp::{gen_tsp, tsp_decode, tsp_encode, tsp_poly, TspInstance};

/// Known cost-preserving involution on decisions.
#[derive(Clone, Debug, PartialEq, Default)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "kind", rename_all = "snake_case"))]
pub enum SymmetryTag {
    #[default]
    None,
    /// `C(x) = C(complement(x))`.
    GlobalBitFlip,
    /// `C(x) = C(x ∘ perm)` for an involutive variable permutation.
    VariablePermutation { perm: Vec<usize> },
}

impl SymmetryTag {
    pub fn variable_permutation(perm: Vec<usize>) -> Result<Self> {
        let n = perm.len();
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || perm[p] != i {
                return Err(invalid("symmetry permutation must be an involution on 0..n"));
            }
        }
        Ok(SymmetryTag::VariablePermutation { perm })
    }

    /// The equivalent decision of `x`, or `None` when there is no symmetry.
    pub fn mate(&self, x: u64, n: usize) -> Option<u64> {
        match self {
            SymmetryTag::None => None,
            SymmetryTag::GlobalBitFlip => Some(!x & crate::bits::mask(n)),
            SymmetryTag::VariablePermutation { perm } => {
                let mut y = 0u64;
                for (i, &p) in perm.iter().enumerate() {
                    y |= ((x >> i) & 1) << p;
                }
                Some(y)
            }
        }
    }

    /// Checks `C(x) = C(mate(x))` on the given states.
    pub fn holds_on(&self, poly: &Polynomial, states: impl IntoIterator<Item = u64>) -> bool {
        let scale = poly.max_abs_coeff().max(1.0) * poly.num_terms().max(1) as f64;
        states.into_iter().all(|x| match self.mate(x, poly.n()) {
            None => true,
            Some(y) => (poly.evaluate_index(x) - poly.evaluate_index(y)).abs() <= 1e-12 * scale,
        })
    }
}

/// A compiled instance: its cost polynomial and known symmetry.
#[derive(Clone, Debug)]
pub struct Compiled {
    pub poly: Polynomial,
    pub symmetry: SymmetryTag,
}

/// Any supported problem instance.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
#[cfg_attr(feature = "serde", serde(tag = "family", rename_all = "snake_case"))]
pub enum Problem {
    Maxcut {
        graph: GraphInstance,
    },
    Mis {
        graph: GraphInstance,
        /// Overrides the default `max(w_i + w_j) + 1` penalty.
        #[cfg_attr(feature = "serde", serde(default, skip_serializing_if = "Option::is_none"))]
        penalty: Option<f64>,
    },
    Portfolio {
        #[cfg_attr(feature = "serde", serde(flatten))]
        instance: PortfolioInstance,
    },
    Labs {
        n: usize,
    },
    Maxksat {
        #[cfg_attr(feature = "serde", serde(flatten))]
        instance: SatInstance,
    },
    Tsp {
        #[cfg_attr(feature = "serde", serde(flatten))]
        instance: TspInstance,
    },
}

impl Problem {
    pub fn family(&self) -> &'static str {
        match self {
            Problem::Maxcut { .. } => "maxcut",
            Problem::Mis { .. } => "mis",
            Problem::Portfolio { .. } => "portfolio",
            Problem::Labs { .. } => "labs",
            Problem::Maxksat { .. } => "maxksat",
            Problem::Tsp { .. } => "tsp",
        }
    }

    /// Number of binary variables (qubits).
    pub fn num_vars(&self) -> usize {
        match self {
            Problem::Maxcut { graph } | Problem::Mis { graph, .. } => graph.n_vertices,
            Problem::Portfolio { instance } => instance.n(),
            Problem::Labs { n } => *n,
            Problem::Maxksat { instance } => instance.n,
            Problem::Tsp { instance } => instance.num_qubits(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Problem::Maxcut { graph } | Problem::Mis { graph, .. } => graph.validate(),
            Problem::Portfolio { instance } => instance.validate(),
            Problem::Labs { n } if *n < 2 => Err(invalid("LABS needs n >= 2")),
            Problem::Labs { .. } => Ok(()),
            Problem::Maxksat { instance } => instance.validate(),
            Problem::Tsp { instance } => instance.validate(),
        }
    }

    pub fn compile(&self) -> Result<Compiled> {
        self.validate()?;
        Ok(match self {
            Problem::Maxcut { graph } => Compiled { poly: maxcut_poly(graph)?, symmetry: SymmetryTag::GlobalBitFlip },
            Problem::Mis { graph, penalty } => {
                let poly = match penalty {
                    Some(l) => mis_poly_with_penalty(graph, *l)?,
                    None => mis_poly(graph)?,
                };
                Compiled { poly, symmetry: SymmetryTag::None }
            }
            Problem::Portfolio { instance } => {
                Compiled { poly: portfolio_poly(instance)?, symmetry: SymmetryTag::None }
            }
            Problem::Labs { n } => Compiled { poly: labs_poly(*n)?, symmetry: SymmetryTag::GlobalBitFlip },
            Problem::Maxksat { instance } => Compiled { poly: maxksat_poly(instance)?, symmetry: SymmetryTag::None },
            Problem::Tsp { instance } => Compiled { poly: tsp_poly(instance)?, symmetry: SymmetryTag::None },
        })
    }

    /// The mixer the family is run with: the ring XY mixer at weight `k`
    /// for portfolios, the hypercube otherwise.
    pub fn default_mixer(&self) -> Result<MixerSpec> {
        match self {
            Problem::Portfolio { instance } => MixerSpec::xy_ring(instance.n(), instance.k),
            _ => MixerSpec::x_hypercube(self.num_vars()),
        }
    }

    /// Cost of basis state `x` by the family's direct formula.
    pub fn direct_cost(&self, x: u64) -> f64 {
        match self {
            Problem::Maxcut { graph } => direct::maxcut(graph, x),
            Problem::Mis { graph, penalty } => {
                direct::mis(graph, x, penalty.unwrap_or_else(|| mis::default_penalty(graph)))
            }
            Problem::Portfolio { instance } => direct::portfolio(instance, x),
            Problem::Labs { n } => direct::labs(*n, x),
            Problem::Maxksat { instance } => -(direct::satisfied_clauses(instance, x) as f64),
            Problem::Tsp { instance } => direct::tsp(instance, x),
        }
    }

    pub fn describe(&self) -> String {
        alloc::format!("{} on {} variables", self.family(), self.num_vars())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_must_be_involution() {
        assert!(SymmetryTag::variable_permutation(alloc::vec![2, 1, 0]).is_ok());
        assert!(SymmetryTag::variable_permutation(alloc::vec![1, 2, 0]).is_err());
    }

    #[test]
    fn mates_are_involutions() {
        let flip = SymmetryTag::GlobalBitFlip;
        let rev = SymmetryTag::variable_permutation(alloc::vec![3, 2, 1, 0]).unwrap();
        for x in 0..16u64 {
            for tag in [&flip, &rev] {
                let y = tag.mate(x, 4).unwrap();
                assert_eq!(tag.mate(y, 4), Some(x));
            }
        }
        assert_eq!(rev.mate(0b0001, 4), Some(0b1000));
        assert_eq!(SymmetryTag::None.mate(3, 4), None);
    }

    #[test]
    fn labs_is_reversal_symmetric_too() {
        let p = labs_poly(6).unwrap();
        let rev = SymmetryTag::variable_permutation((0..6).rev().collect()).unwrap();
        assert!(rev.holds_on(&p, 0..64));
        assert!(SymmetryTag::GlobalBitFlip.holds_on(&p, 0..64));
    }
}
