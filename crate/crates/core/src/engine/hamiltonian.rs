use num_complex::Complex64;

use crate::mixer::{ring_bonds, MixerKind, MixerSpec};
use crate::spectrum::Spectrum;

/// `dst = (gamma · H_M + H_C) src` with `H_M = -Σ X_q` or `H_XY`.
pub fn apply_hamiltonian(gamma: f64, costs: &Spectrum, spec: &MixerSpec, src: &[Complex64], dst: &mut [Complex64]) {
    let n = spec.n();
    match spec.kind() {
        MixerKind::XHypercube => {
            for (x, out) in dst.iter_mut().enumerate() {
                let mut hop = Complex64::new(0.0, 0.0);
                for q in 0..n {
                    hop += src[x ^ (1 << q)];
                }
                *out = costs.cost(x) * src[x] - gamma * hop;
            }
        }
        MixerKind::XyRing => {
            let bonds = ring_bonds(n);
            for (x, out) in dst.iter_mut().enumerate() {
                let mut hop = Complex64::new(0.0, 0.0);
                for &(i, j) in &bonds {
                    if (x >> i) & 1 != (x >> j) & 1 {
                        hop += src[x ^ (1 << i) ^ (1 << j)];
                    }
                }
                *out = costs.cost(x) * src[x] - gamma * hop;
            }
        }
    }
}

/// Upper bound on the induced ∞-norm of `gamma · H_M + H_C`.
pub(crate) fn norm_bound(gamma: f64, costs: &Spectrum, spec: &MixerSpec) -> f64 {
    let degree = match spec.kind() {
        MixerKind::XHypercube => spec.n(),
        MixerKind::XyRing => ring_bonds(spec.n()).len(),
    };
    let cmax = costs.costs().iter().fold(0.0f64, |m, c| m.max(c.abs()));
    cmax + gamma.abs() * degree as f64
}
