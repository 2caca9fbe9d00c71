//! Multilinear polynomials over binary variables.
//!
//! A monomial is a set of variable indices stored as a bitmask, so
//! `x_i * x_i` reduces to `x_i` for free when two monomials are multiplied.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::bits::{BitString, MAX_BITS};
use crate::error::{invalid, Error, Result};

/// Set of variable indices; the empty set is the constant monomial.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(u64);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_vars(vars: &[usize]) -> Result<Self> {
        let mut mask = 0u64;
        for &v in vars {
            if v >= MAX_BITS {
                return Err(invalid(alloc::format!("variable index {v} too large")));
            }
            mask |= 1 << v;
        }
        Ok(Monomial(mask))
    }

    #[inline]
    pub fn mask(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    /// Variable indices in increasing order.
    pub fn vars(self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree());
        let mut m = self.0;
        while m != 0 {
            out.push(m.trailing_zeros() as usize);
            m &= m - 1;
        }
        out
    }

    #[inline]
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial(self.0 | other.0)
    }

    /// Value of the monomial at basis state `x`.
    #[inline]
    pub fn holds(self, x: u64) -> bool {
        x & self.0 == self.0
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial {
    n: usize,
    terms: BTreeMap<Monomial, f64>,
}

impl Polynomial {
    pub fn zero(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_BITS {
            return Err(invalid(alloc::format!("polynomial width {n} outside 1..={MAX_BITS}")));
        }
        Ok(Self { n, terms: BTreeMap::new() })
    }

    pub fn constant(n: usize, c: f64) -> Result<Self> {
        let mut p = Self::zero(n)?;
        p.add_term(Monomial::ONE, c);
        Ok(p)
    }

    /// The polynomial `x_i`.
    pub fn var(n: usize, i: usize) -> Result<Self> {
        if i >= n {
            return Err(invalid(alloc::format!("variable {i} out of range for n = {n}")));
        }
        let mut p = Self::zero(n)?;
        p.add_term(Monomial(1 << i), 1.0);
        Ok(p)
    }

    /// The polynomial `1 - x_i`.
    pub fn not_var(n: usize, i: usize) -> Result<Self> {
        let mut p = Self::var(n, i)?.scale(-1.0);
        p.add_term(Monomial::ONE, 1.0);
        Ok(p)
    }

    pub fn from_terms<I, V>(n: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, f64)>,
        V: AsRef<[usize]>,
    {
        let mut p = Self::zero(n)?;
        for (vars, coeff) in terms {
            let vars = vars.as_ref();
            if let Some(&bad) = vars.iter().find(|&&v| v >= n) {
                return Err(invalid(alloc::format!("variable {bad} out of range for n = {n}")));
            }
            p.add_term(Monomial::from_vars(vars)?, coeff);
        }
        Ok(p)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> f64 {
        self.terms.get(&m).copied().unwrap_or(0.0)
    }

    pub fn constant_term(&self) -> f64 {
        self.coeff(Monomial::ONE)
    }

    /// Terms in canonical order: by monomial size, then lexicographically by
    /// variable indices.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, f64)> {
        let mut out: Vec<_> = self.terms.iter().map(|(m, &c)| (m.vars(), c)).collect();
        out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (Monomial, f64)> + '_ {
        self.terms.iter().map(|(&m, &c)| (m, c))
    }

    /// Adds `coeff * m` in place, dropping the term if it cancels to zero.
    pub fn add_term(&mut self, m: Monomial, coeff: f64) {
        debug_assert!(m.mask() >> self.n == 0);
        if coeff == 0.0 {
            return;
        }
        let entry = self.terms.entry(m).or_insert(0.0);
        *entry += coeff;
        if *entry == 0.0 {
            self.terms.remove(&m);
        }
    }

    fn check_same_width(&self, other: &Polynomial) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: other.n });
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_width(other)?;
        let mut out = self.clone();
        for (m, c) in other.terms() {
            out.add_term(m, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.add(&other.scale(-1.0))
    }

    /// Product with multilinear reduction `x_i^2 = x_i`.
    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same_width(other)?;
        let mut out = Polynomial { n: self.n, terms: BTreeMap::new() };
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                out.add_term(ma.times(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: f64) -> Polynomial {
        let mut out = Polynomial { n: self.n, terms: BTreeMap::new() };
        if c != 0.0 {
            for (m, v) in self.terms() {
                out.add_term(m, v * c);
            }
        }
        out
    }

    pub fn evaluate(&self, x: &BitString) -> Result<f64> {
        if x.len() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, found: x.len() });
        }
        Ok(self.evaluate_index(x.index()))
    }

    /// Evaluates at the basis state with index `x` (no width check).
    #[inline]
    pub fn evaluate_index(&self, x: u64) -> f64 {
        self.terms.iter().filter(|(m, _)| m.holds(x)).map(|(_, &c)| c).sum()
    }

    /// Largest absolute coefficient (0 for the zero polynomial).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms.values().fold(0.0, |acc, c| if c.abs() > acc { c.abs() } else { acc })
    }
}
