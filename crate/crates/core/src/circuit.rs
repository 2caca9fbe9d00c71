//! Gate-level lowering of a layer plan for the hypercube mixer.
//!
//! The cost phase `exp(-i dt C)` is rewritten in the Ising basis
//! (`x_i = (1 - z_i) / 2`) as a product of commuting `exp(-i dt J_S Z_S)`
//! factors, each realized as a CNOT ladder around one `RZ(2 dt J_S)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::engine::Sense;
use crate::error::{invalid, Result};
use crate::poly::{Monomial, Polynomial};
use crate::schedule::LayerPlan;

/// Highest monomial degree lowered to a phase gadget.
pub const MAX_GADGET_DEGREE: usize = 4;

/// Ising coefficients below this fraction of the largest one are dropped.
const DROP_RTOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    Cx {
        control: usize,
        target: usize,
    },
    /// `exp(-i angle Z / 2)`.
    Rz {
        qubit: usize,
        angle: f64,
    },
    /// `exp(-i angle X / 2)`.
    Rx {
        qubit: usize,
        angle: f64,
    },
}

impl Gate {
    pub fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::Rz { qubit: q, .. } | Gate::Rx { qubit: q, .. } => (q, None),
            Gate::Cx { control, target } => (control, Some(target)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Circuit {
    pub n: usize,
    pub gates: Vec<Gate>,
    /// Cost-plus-mixer layers.
    pub layers: usize,
    /// Depth of one cost layer.
    pub cost_layer_depth: usize,
    /// Phase gadgets per cost layer, by Ising term.
    pub gadgets: Vec<(Vec<usize>, f64)>,
}

impl Circuit {
    /// State preparation and mixer both have depth 1, so the total is
    /// `1 + p̄ (1 + d_C)`.
    pub fn depth(&self) -> usize {
        1 + self.layers * (1 + self.cost_layer_depth)
    }
}

/// `J_S` with `C(x) = Σ_S J_S Π_{i∈S} z_i`, omitting the constant and
/// negligible terms, in the polynomial's canonical term order.
pub fn ising_coefficients(poly: &Polynomial) -> Vec<(Vec<usize>, f64)> {
    let mut j: BTreeMap<Monomial, f64> = BTreeMap::new();
    for (m, alpha) in poly.terms() {
        let mask = m.mask();
        let scale = alpha / (1u64 << m.degree()) as f64;
        let mut sub = mask;
        loop {
            if sub != 0 {
                let sign = if sub.count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                *j.entry(Monomial::from_vars(&bits_of(sub)).expect("valid mask")).or_insert(0.0) += sign * scale;
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & mask;
        }
    }
    let largest = j.values().fold(0.0f64, |a, v| a.max(v.abs()));
    let mut out: Vec<(Vec<usize>, f64)> =
        j.into_iter().filter(|(_, v)| v.abs() > DROP_RTOL * largest).map(|(m, v)| (m.vars(), v)).collect();
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

fn bits_of(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| (mask >> i) & 1 == 1).collect()
}

/// Lowers `plan` to gates. `poly` is the cost as given by the user (not
/// negated in maximize mode); the sense only flips the mixer angle.
pub fn lower_layer_plan(poly: &Polynomial, plan: &LayerPlan, sense: Sense) -> Result<Circuit> {
    if poly.degree() > MAX_GADGET_DEGREE {
        return Err(invalid(alloc::format!(
            "cost degree {} exceeds the gadget cap of {MAX_GADGET_DEGREE}",
            poly.degree()
        )));
    }
    let n = poly.n();
    let gadgets = ising_coefficients(poly);
    let mut gates: Vec<Gate> = (0..n).map(Gate::H).collect();
    for layer in plan.layers() {
        for (vars, j) in &gadgets {
            push_gadget(&mut gates, vars, 2.0 * layer.dt * j);
        }
        let angle = -2.0 * sense.sign() * layer.theta;
        gates.extend((0..n).map(|q| Gate::Rx { qubit: q, angle }));
    }
    let mut one_layer = Vec::new();
    for (vars, j) in &gadgets {
        push_gadget(&mut one_layer, vars, *j);
    }
    Ok(Circuit { n, gates, layers: plan.len(), cost_layer_depth: depth_of(n, &one_layer), gadgets })
}

fn push_gadget(gates: &mut Vec<Gate>, vars: &[usize], angle: f64) {
    let ladder: Vec<Gate> = vars.windows(2).map(|w| Gate::Cx { control: w[0], target: w[1] }).collect();
    gates.extend(ladder.iter().copied());
    gates.push(Gate::Rz { qubit: *vars.last().expect("non-empty gadget"), angle });
    gates.extend(ladder.iter().rev().copied());
}

/// As-soon-as-possible depth of a gate sequence.
pub fn depth_of(n: usize, gates: &[Gate]) -> usize {
    let mut level = alloc::vec![0usize; n];
    for g in gates {
        match g.qubits() {
            (a, None) => level[a] += 1,
            (a, Some(b)) => {
                let l = level[a].max(level[b]) + 1;
                level[a] = l;
                level[b] = l;
            }
        }
    }
    level.into_iter().max().unwrap_or(0)
}
