use alloc::vec::Vec;

use rand::Rng as _;
#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::rng::{rng_for, stream};

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NelderMeadOptions {
    /// Objective evaluations allowed after the initial simplex.
    pub max_iter: usize,
    pub seed: u64,
    /// Initial edge length as a fraction of each box side.
    pub initial_step: f64,
    pub xtol: f64,
    pub ftol: f64,
}

impl Default for NelderMeadOptions {
    fn default() -> Self {
        Self { max_iter: 200, seed: 0, initial_step: 0.1, xtol: 1e-9, ftol: 1e-12 }
    }
}

#[derive(Clone, Debug, PartialEq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct OptResult {
    pub best_params: Vec<f64>,
    pub best_value: f64,
    /// Simplex iterations performed.
    pub iterations_used: usize,
    /// Every evaluation in order.
    pub history: Vec<(Vec<f64>, f64)>,
}

struct Counter<'a> {
    f: &'a mut dyn FnMut(&[f64]) -> f64,
    bounds: &'a [(f64, f64)],
    budget: usize,
    history: Vec<(Vec<f64>, f64)>,
}

impl Counter<'_> {
    fn clip(&self, x: &mut [f64]) {
        for (v, &(lo, hi)) in x.iter_mut().zip(self.bounds) {
            *v = if v.is_nan() { lo } else { v.clamp(lo, hi) };
        }
    }

    fn eval(&mut self, mut x: Vec<f64>) -> Option<(Vec<f64>, f64)> {
        if self.budget == 0 {
            return None;
        }
        self.budget -= 1;
        self.clip(&mut x);
        let v = (self.f)(&x);
        self.history.push((x.clone(), v));
        Some((x, v))
    }
}

/// Minimizes `objective` over the box `bounds`, starting from `x0`.
///
/// Every trial point is clipped into the box before evaluation. The initial
/// simplex steps along each axis by `initial_step` of the side length with a
/// seeded ±10% jitter, turning back when it would leave the box.
pub fn nelder_mead(
    objective: &mut dyn FnMut(&[f64]) -> f64,
    x0: &[f64],
    bounds: &[(f64, f64)],
    opts: &NelderMeadOptions,
) -> Result<OptResult> {
    let d = x0.len();
    if d == 0 || bounds.len() != d {
        return Err(invalid("x0 and bounds must be non-empty and of equal length"));
    }
    if bounds.iter().any(|&(lo, hi)| !(lo.is_finite() && hi.is_finite() && lo <= hi)) {
        return Err(invalid("bounds must be finite with lo <= hi"));
    }
    if x0.iter().zip(bounds).any(|(v, &(lo, hi))| !(lo..=hi).contains(v)) {
        return Err(invalid("x0 must lie within bounds"));
    }
    if opts.max_iter == 0 {
        return Err(invalid("max_iter must be positive"));
    }
    let mut rng = rng_for(opts.seed, stream::OPTIMIZER);
    let mut ctr = Counter { f: objective, bounds, budget: usize::MAX, history: Vec::new() };

    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(d + 1);
    simplex.push(ctr.eval(x0.to_vec()).expect("unbounded budget"));
    for i in 0..d {
        let (lo, hi) = bounds[i];
        let step = opts.initial_step * (hi - lo) * (1.0 + rng.gen_range(-0.1..0.1));
        let mut x = x0.to_vec();
        x[i] = if x0[i] + step <= hi { x0[i] + step } else { x0[i] - step };
        simplex.push(ctr.eval(x).expect("unbounded budget"));
    }
    ctr.budget = opts.max_iter;

    let mut iterations = 0;
    loop {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0].1, simplex[d].1);
        let spread_x = simplex[1..]
            .iter()
            .flat_map(|(x, _)| x.iter().zip(&simplex[0].0).map(|(a, b)| (a - b).abs()))
            .fold(0.0, f64::max);
        if (worst - best).abs() <= opts.ftol && spread_x <= opts.xtol {
            break;
        }
        iterations += 1;

        let centroid: Vec<f64> =
            (0..d).map(|j| simplex[..d].iter().map(|(x, _)| x[j]).sum::<f64>() / d as f64).collect();
        let toward = |from: &[f64], coef: f64| -> Vec<f64> {
            centroid.iter().zip(from).map(|(c, w)| c + coef * (c - w)).collect()
        };
        let Some(refl) = ctr.eval(toward(&simplex[d].0, REFLECT)) else { break };
        if refl.1 < best {
            let Some(exp) = ctr.eval(toward(&simplex[d].0, REFLECT * EXPAND)) else {
                simplex[d] = refl;
                break;
            };
            simplex[d] = if exp.1 < refl.1 { exp } else { refl };
            continue;
        }
        if refl.1 < simplex[d - 1].1 {
            simplex[d] = refl;
            continue;
        }
        let outside = refl.1 < worst;
        let target = if outside { toward(&simplex[d].0, REFLECT * CONTRACT) } else { toward(&simplex[d].0, -CONTRACT) };
        let Some(con) = ctr.eval(target) else {
            if outside {
                simplex[d] = refl;
            }
            break;
        };
        if con.1 < refl.1.min(worst) || (outside && con.1 <= refl.1) {
            simplex[d] = con;
            continue;
        }
        let anchor = simplex[0].0.clone();
        let mut exhausted = false;
        for v in simplex.iter_mut().skip(1) {
            let x: Vec<f64> = anchor.iter().zip(&v.0).map(|(a, b)| a + SHRINK * (b - a)).collect();
            match ctr.eval(x) {
                Some(e) => *v = e,
                None => {
                    exhausted = true;
                    break;
                }
            }
        }
        if exhausted {
            break;
        }
    }

    let history = ctr.history;
    let (best_params, best_value) = history
        .iter()
        .fold(None::<&(Vec<f64>, f64)>, |acc, e| match acc {
            Some(b) if b.1 <= e.1 || e.1.is_nan() => Some(b),
            _ => Some(e),
        })
        .cloned()
        .expect("at least one evaluation");
    Ok(OptResult { best_params, best_value, iterations_used: iterations, history })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn quadratic_bowl() {
        let mut f = |x: &[f64]| x.iter().map(|v| (v - 0.5) * (v - 0.5)).sum::<f64>();
        let r = nelder_mead(
            &mut f,
            &[0.0; 3],
            &[(0.0, 1.0); 3],
            &NelderMeadOptions { max_iter: 200, ..Default::default() },
        )
        .unwrap();
        assert!(r.best_params.iter().all(|v| (v - 0.5).abs() < 1e-3), "{:?}", r.best_params);
        assert!(r.history.len() <= 200 + 4);
    }

    #[test]
    fn constant_objective() {
        let mut f = |_: &[f64]| 7.0;
        let r = nelder_mead(&mut f, &[0.2, 0.4], &[(0.0, 1.0); 2], &NelderMeadOptions::default()).unwrap();
        assert_eq!(r.best_params, [0.2, 0.4]);
        assert_eq!(r.best_value, 7.0);
    }

    #[test]
    fn absolute_value_1d() {
        let mut f = |x: &[f64]| (x[0] - 0.3).abs();
        let r = nelder_mead(&mut f, &[0.9], &[(0.0, 1.0)], &NelderMeadOptions::default()).unwrap();
        assert!((r.best_params[0] - 0.3).abs() < 1e-3);
    }

    #[test]
    fn argument_errors() {
        let mut f = |x: &[f64]| x[0];
        let ok = NelderMeadOptions::default();
        assert!(nelder_mead(&mut f, &[0.5], &[(0.0, 1.0)], &NelderMeadOptions { max_iter: 0, ..ok }).is_err());
        assert!(nelder_mead(&mut f, &[2.0], &[(0.0, 1.0)], &ok).is_err());
        assert!(nelder_mead(&mut f, &[0.5], &[(0.0, f64::INFINITY)], &ok).is_err());
        assert!(nelder_mead(&mut f, &[], &[], &ok).is_err());
    }

    #[test]
    fn deterministic_under_seed() {
        let run = |seed| {
            let mut f = |x: &[f64]| (x[0] - 0.1).powi(2) + 3.0 * (x[1] + 0.4).powi(2) + x[0] * x[1];
            nelder_mead(
                &mut f,
                &[0.0, 0.0],
                &[(-1.0, 1.0); 2],
                &NelderMeadOptions { max_iter: 50, seed, ..Default::default() },
            )
            .unwrap()
        };
        assert_eq!(run(3), run(3));
        assert_ne!(run(3).history, run(4).history);
    }

    proptest! {
        #[test]
        fn stays_in_box_and_within_budget(seed in any::<u64>(), budget in 1usize..80, c in -3.0f64..3.0) {
            let bounds = [(-1.0, 0.5), (0.0, 2.0)];
            let mut f = |x: &[f64]| (x[0] - c).powi(2) + (x[1] - c).powi(2);
            let r = nelder_mead(&mut f, &[0.0, 1.0], &bounds, &NelderMeadOptions { max_iter: budget, seed, ..Default::default() }).unwrap();
            prop_assert!(r.history.len() <= budget + 3);
            for (x, _) in &r.history {
                prop_assert!(x.iter().zip(&bounds).all(|(v, &(lo, hi))| (lo..=hi).contains(v)));
            }
            let min = r.history.iter().map(|h| h.1).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(r.best_value, min);
        }
    }
}
