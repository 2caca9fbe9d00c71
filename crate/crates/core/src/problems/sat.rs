use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::poly::Polynomial;
use crate::rng::{rng_for, stream};

/// `x_var` or its negation. Serialized as a DIMACS integer (1-based, sign
/// for negation).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Literal {
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn value(self, x: u64) -> bool {
        (((x >> self.var) & 1) == 1) != self.negated
    }

    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.negated {
            -v
        } else {
            v
        }
    }

    pub fn from_dimacs(v: i64) -> Result<Self> {
        if v == 0 {
            return Err(invalid("DIMACS literal 0 is not a variable"));
        }
        Ok(Literal { var: (v.unsigned_abs() - 1) as usize, negated: v < 0 })
    }
}

#[cfg(feature = "serde")]
impl Serialize for Literal {
    fn serialize<S: Serializer>(&self, s: S) -> core::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_dimacs())
    }
}

#[cfg(feature = "serde")]
impl<'de> Deserialize<'de> for Literal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> core::result::Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Literal::from_dimacs(v).map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SatInstance {
    pub n: usize,
    pub k: usize,
    pub clauses: Vec<Vec<Literal>>,
}

impl SatInstance {
    pub fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 {
            return Err(invalid("SAT instance needs n >= 1 and k >= 1"));
        }
        for c in &self.clauses {
            if c.len() != self.k {
                return Err(invalid("clause width differs from k"));
            }
            let mut vars: Vec<usize> = c.iter().map(|l| l.var).collect();
            vars.sort_unstable();
            vars.dedup();
            if vars.len() != c.len() || vars.last().is_some_and(|&v| v >= self.n) {
                return Err(invalid("clause variables must be distinct and below n"));
            }
        }
        Ok(())
    }
}

/// `⌊alpha·n⌋` clauses drawn uniformly, with replacement, from the
/// `2^k C(n, k)` clauses on distinct variables.
pub fn gen_maxksat(n: usize, k: usize, alpha: f64, seed: u64) -> Result<SatInstance> {
    if k == 0 || k > n {
        return Err(invalid("MAX-k-SAT needs 1 <= k <= n"));
    }
    if !(alpha > 0.0) {
        return Err(invalid("clause density alpha must be positive"));
    }
    let m = libm::floor(alpha * n as f64) as usize;
    if m == 0 {
        return Err(invalid("alpha·n rounds down to zero clauses"));
    }
    let mut rng = rng_for(seed, stream::SAT);
    let clauses = (0..m)
        .map(|_| {
            let mut vars = sample(&mut rng, n, k).into_vec();
            vars.sort_unstable();
            vars.into_iter().map(|var| Literal { var, negated: rng.gen() }).collect()
        })
        .collect();
    Ok(SatInstance { n, k, clauses })
}

/// `C(x) = -Σ_j (1 - Π_i (1 - l_ji))`.
pub fn maxksat_poly(inst: &SatInstance) -> Result<Polynomial> {
    inst.validate()?;
    let n = inst.n;
    let mut cost = Polynomial::zero(n)?;
    for clause in &inst.clauses {
        let mut unsat = Polynomial::constant(n, 1.0)?;
        for lit in clause {
            let falsified = if lit.negated { Polynomial::var(n, lit.var)? } else { Polynomial::not_var(n, lit.var)? };
            unsat = unsat.mul(&falsified)?;
        }
        cost = cost.add(&unsat)?;
    }
    let m = inst.clauses.len() as f64;
    cost.add_term(crate::poly::Monomial::ONE, -m);
    Ok(cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::direct;

    #[test]
    fn single_clause() {
        let inst = SatInstance {
            n: 3,
            k: 3,
            clauses: alloc::vec![alloc::vec![
                Literal::from_dimacs(1).unwrap(),
                Literal::from_dimacs(-2).unwrap(),
                Literal::from_dimacs(3).unwrap(),
            ]],
        };
        let p = maxksat_poly(&inst).unwrap();
        assert_eq!(p.evaluate(&"010".parse().unwrap()).unwrap(), 0.0);
        assert_eq!(p.evaluate(&"000".parse().unwrap()).unwrap(), -1.0);
    }

    #[test]
    fn generator_shape() {
        let inst = gen_maxksat(10, 3, 4.27, 5).unwrap();
        assert_eq!(inst.clauses.len(), 42);
        inst.validate().unwrap();
        assert_eq!(inst, gen_maxksat(10, 3, 4.27, 5).unwrap());
        assert!(gen_maxksat(3, 4, 1.0, 0).is_err());
        assert!(gen_maxksat(3, 3, 0.1, 0).is_err());
    }

    #[test]
    fn counts_satisfied_clauses_exactly() {
        for (k, seed) in [(2, 1), (3, 2), (4, 3)] {
            let inst = gen_maxksat(10, k, 3.0, seed).unwrap();
            let p = maxksat_poly(&inst).unwrap();
            assert!(p.degree() <= k);
            for x in 0..1024u64 {
                assert_eq!(-p.evaluate_index(x), direct::satisfied_clauses(&inst, x) as f64);
            }
        }
    }

    #[test]
    fn dimacs_literals() {
        assert_eq!(Literal::from_dimacs(-3).unwrap(), Literal { var: 2, negated: true });
        assert_eq!(Literal { var: 0, negated: false }.to_dimacs(), 1);
        assert!(Literal::from_dimacs(0).is_err());
    }
}
