use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::poly::{Monomial, Polynomial};
use crate::rng::{rng_for, stream};

/// Mean-variance selection of exactly `k` out of `n` assets.
#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PortfolioInstance {
    pub mu: Vec<f64>,
    /// Symmetric `n × n` covariance; only entries with `i < j` enter the cost.
    pub sigma: Vec<Vec<f64>>,
    pub lambda: f64,
    pub k: usize,
}

impl PortfolioInstance {
    pub fn n(&self) -> usize {
        self.mu.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n();
        if n == 0 {
            return Err(invalid("portfolio has no assets"));
        }
        if self.sigma.len() != n || self.sigma.iter().any(|row| row.len() != n) {
            return Err(invalid("covariance must be an n × n matrix"));
        }
        if !(self.lambda > 0.0) {
            return Err(invalid("risk appetite must be positive"));
        }
        if self.k > n {
            return Err(invalid("cardinality k exceeds asset count"));
        }
        Ok(())
    }

    /// Parses an asset table. Each non-blank line that does not start with
    /// `#` is either `i mu_i` (two fields) or `i j sigma_ij` (three fields),
    /// with 0-based indices. Missing covariances are 0.
    pub fn parse_asset_table(text: &str, lambda: f64, k: usize) -> Result<Self> {
        let mut mu = BTreeMap::new();
        let mut cov = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = || invalid(alloc::format!("asset table line {}: cannot parse {line:?}", lineno + 1));
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                [i, m] => {
                    let i: usize = i.parse().map_err(|_| bad())?;
                    if mu.insert(i, m.parse::<f64>().map_err(|_| bad())?).is_some() {
                        return Err(invalid(alloc::format!("asset {i} listed twice")));
                    }
                }
                [i, j, s] => cov.push((
                    i.parse::<usize>().map_err(|_| bad())?,
                    j.parse::<usize>().map_err(|_| bad())?,
                    s.parse::<f64>().map_err(|_| bad())?,
                )),
                _ => return Err(bad()),
            }
        }
        let n = mu.len();
        if mu.keys().enumerate().any(|(pos, &i)| pos != i) {
            return Err(invalid("asset indices must be 0..n without gaps"));
        }
        let mut sigma = alloc::vec![alloc::vec![0.0; n]; n];
        for (i, j, s) in cov {
            if i >= n || j >= n {
                return Err(invalid(alloc::format!("covariance ({i}, {j}) refers to an unknown asset")));
            }
            sigma[i][j] = s;
            sigma[j][i] = s;
        }
        let inst = Self { mu: mu.into_values().collect(), sigma, lambda, k };
        inst.validate()?;
        Ok(inst)
    }

    /// Restriction to `n` assets drawn uniformly without replacement.
    pub fn random_subset(&self, n: usize, k: usize, seed: u64) -> Result<Self> {
        if n == 0 || n > self.n() {
            return Err(invalid("subset size must lie in 1..=n"));
        }
        let mut rng = rng_for(seed, stream::PORTFOLIO);
        let mut picked = sample(&mut rng, self.n(), n).into_vec();
        picked.sort_unstable();
        let inst = Self {
            mu: picked.iter().map(|&i| self.mu[i]).collect(),
            sigma: picked.iter().map(|&i| picked.iter().map(|&j| self.sigma[i][j]).collect()).collect(),
            lambda: self.lambda,
            k,
        };
        inst.validate()?;
        Ok(inst)
    }
}

/// Synthetic instance: returns uniform in `[0, 1)`, covariance `A Aᵀ / n`
/// with `A` uniform in `[-1, 1)`.
pub fn gen_portfolio(n: usize, k: usize, lambda: f64, seed: u64) -> Result<PortfolioInstance> {
    let mut rng = rng_for(seed, stream::PORTFOLIO);
    let mu = (0..n).map(|_| rng.gen::<f64>()).collect();
    let a: Vec<Vec<f64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect()).collect();
    let sigma = (0..n)
        .map(|i| (0..n).map(|j| a[i].iter().zip(&a[j]).map(|(x, y)| x * y).sum::<f64>() / n as f64).collect())
        .collect();
    let inst = PortfolioInstance { mu, sigma, lambda, k };
    inst.validate()?;
    Ok(inst)
}

/// `C(x) = λ Σ_{i<j} σ_ij x_i x_j - Σ_i μ_i x_i`. The cardinality constraint
/// is left to the mixer.
pub fn portfolio_poly(inst: &PortfolioInstance) -> Result<Polynomial> {
    inst.validate()?;
    let n = inst.n();
    let mut p = Polynomial::zero(n)?;
    for i in 0..n {
        p.add_term(Monomial::from_vars(&[i])?, -inst.mu[i]);
        for j in i + 1..n {
            p.add_term(Monomial::from_vars(&[i, j])?, inst.lambda * inst.sigma[i][j]);
        }
    }
    Ok(p)
}
