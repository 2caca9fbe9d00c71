//! Exact cost spectra over all `2^n` basis states.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Default cap on `n` for full enumeration.
pub const SPECTRUM_CAP: usize = 14;

/// Rank assigned to states outside the feasible set.
pub const INFEASIBLE: usize = usize::MAX;

const LEVEL_RTOL: f64 = 1e-9;
const LEVEL_ATOL: f64 = 1e-12;

/// Whether two cost values belong to the same energy level.
///
/// Relative tolerance `1e-9` with a `1e-12` absolute floor, so float
/// summation noise does not split a level in two.
#[inline]
pub fn same_level(a: f64, b: f64) -> bool {
    let d = (a - b).abs();
    d <= LEVEL_ATOL || d <= LEVEL_RTOL * a.abs().max(b.abs())
}

#[derive(Clone, Debug)]
pub struct Spectrum {
    n: usize,
    costs: Vec<f64>,
    c_min: f64,
    c_max: f64,
    /// Distinct feasible cost levels, ascending; `levels[r]` is the cost of rank `r`.
    levels: Vec<f64>,
    ranking_of: Vec<usize>,
    rank_sizes: Vec<usize>,
    feasible: Option<Vec<bool>>,
}

/// Enumerates the cost of every basis state, with the default cap.
pub fn enumerate_spectrum(poly: &Polynomial) -> Result<Spectrum> {
    Spectrum::enumerate(poly, SPECTRUM_CAP)
}

impl Spectrum {
    pub fn enumerate(poly: &Polynomial, cap: usize) -> Result<Self> {
        let n = poly.n();
        if n > cap {
            return Err(Error::TooManyQubits { n, cap });
        }
        let costs = (0..1u64 << n).map(|x| poly.evaluate_index(x)).collect();
        Self::from_costs(n, costs, None)
    }

    /// Builds a spectrum from a precomputed cost table. When `feasible` is
    /// given, extremes and rankings only consider feasible states and the
    /// rest get rank [`INFEASIBLE`].
    pub fn from_costs(n: usize, costs: Vec<f64>, feasible: Option<Vec<bool>>) -> Result<Self> {
        let dim = 1usize << n;
        if costs.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, found: costs.len() });
        }
        if let Some(f) = &feasible {
            if f.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: f.len() });
            }
        }
        let is_feasible = |j: usize| feasible.as_ref().is_none_or(|f| f[j]);
        let mut order: Vec<usize> = (0..dim).filter(|&j| is_feasible(j)).collect();
        if order.is_empty() {
            return Err(crate::error::invalid("spectrum has no feasible state"));
        }
        order.sort_by(|&a, &b| costs[a].total_cmp(&costs[b]));

        let mut ranking_of = alloc::vec![INFEASIBLE; dim];
        let mut levels: Vec<f64> = Vec::new();
        let mut rank_sizes: Vec<usize> = Vec::new();
        for &j in &order {
            let c = costs[j];
            match levels.last() {
                Some(&start) if same_level(start, c) => {
                    *rank_sizes.last_mut().unwrap() += 1;
                }
                _ => {
                    levels.push(c);
                    rank_sizes.push(1);
                }
            }
            ranking_of[j] = levels.len() - 1;
        }
        let c_min = costs[order[0]];
        let c_max = costs[*order.last().unwrap()];
        Ok(Self { n, costs, c_min, c_max, levels, ranking_of, rank_sizes, feasible })
    }

    /// Same costs, restricted to the states where `feasible[j]` holds.
    pub fn restrict(self, feasible: Vec<bool>) -> Result<Self> {
        Self::from_costs(self.n, self.costs, Some(feasible))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.costs.len()
    }

    #[inline]
    pub fn costs(&self) -> &[f64] {
        &self.costs
    }

    #[inline]
    pub fn cost(&self, j: usize) -> f64 {
        self.costs[j]
    }

    #[inline]
    pub fn c_min(&self) -> f64 {
        self.c_min
    }

    #[inline]
    pub fn c_max(&self) -> f64 {
        self.c_max
    }

    pub fn levels(&self) -> &[f64] {
        &self.levels
    }

    /// Number of distinct feasible cost values.
    pub fn num_ranks(&self) -> usize {
        self.levels.len()
    }

    pub fn rank_sizes(&self) -> &[usize] {
        &self.rank_sizes
    }

    #[inline]
    pub fn ranking_of(&self, j: usize) -> usize {
        self.ranking_of[j]
    }

    pub fn rankings(&self) -> &[usize] {
        &self.ranking_of
    }

    #[inline]
    pub fn is_feasible(&self, j: usize) -> bool {
        self.feasible.as_ref().is_none_or(|f| f[j])
    }

    pub fn is_constrained(&self) -> bool {
        self.feasible.is_some()
    }

    /// Rank of a cost value, if it matches a level.
    pub fn rank_of_value(&self, c: f64) -> Option<usize> {
        let pos = self.levels.partition_point(|&l| l < c && !same_level(l, c));
        (pos < self.levels.len() && same_level(self.levels[pos], c)).then_some(pos)
    }

    /// Lowest-index optimal state.
    pub fn argmin(&self) -> usize {
        (0..self.dim()).find(|&j| self.ranking_of[j] == 0).unwrap()
    }

    /// Lowest-index worst feasible state.
    pub fn argmax(&self) -> usize {
        let worst = self.levels.len() - 1;
        (0..self.dim()).find(|&j| self.ranking_of[j] == worst).unwrap()
    }
}
