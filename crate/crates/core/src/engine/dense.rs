//! Dense matrices and matrix exponentials for small registers. Too slow for
//! production use; kept as an independent check of the matrix-free paths.

use alloc::vec::Vec;

use num_complex::Complex64;

use super::Sense;
use crate::error::{invalid, Error, Result};
use crate::mixer::{ring_bonds, MixerKind, MixerSpec};
use crate::schedule::HoppingRate;
use crate::spectrum::Spectrum;
use crate::state::StateVector;

/// Largest register turned into a dense matrix.
pub const DENSE_CAP: usize = 8;

/// Row-major square complex matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl DenseMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: alloc::vec![Complex64::new(0.0, 0.0); dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.dim + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Complex64) {
        self.data[r * self.dim + c] = v;
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { dim: self.dim, data: self.data.iter().map(|v| v * s).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { dim: self.dim, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..d {
                    out.data[i * d + j] += a * other.data[k * d + j];
                }
            }
        }
        out
    }

    pub fn matvec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let d = self.dim;
        (0..d).map(|i| (0..d).map(|j| self.data[i * d + j] * v[j]).sum()).collect()
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.dim)
            .map(|i| self.data[i * self.dim..(i + 1) * self.dim].iter().map(|v| v.norm()).sum())
            .fold(0.0, f64::max)
    }
}

/// `exp(A)` by scaling and squaring with a degree-20 Taylor polynomial.
pub fn expm(a: &DenseMatrix) -> DenseMatrix {
    let norm = a.norm_inf();
    let squarings = if norm > 0.25 { libm::ceil(libm::log2(norm / 0.25)) as u32 } else { 0 };
    let scaled = a.scale(Complex64::new(libm::ldexp(1.0, -(squarings as i32)), 0.0));
    let mut result = DenseMatrix::identity(a.dim());
    let mut term = DenseMatrix::identity(a.dim());
    for k in 1..=20 {
        term = term.matmul(&scaled).scale(Complex64::new(1.0 / k as f64, 0.0));
        result = result.add(&term);
    }
    for _ in 0..squarings {
        result = result.matmul(&result);
    }
    result
}

/// `gamma · H_M + H_C` built entry by entry from the mixer graph.
pub fn hamiltonian_matrix(gamma: f64, costs: &Spectrum, spec: &MixerSpec) -> Result<DenseMatrix> {
    let n = spec.n();
    if n > DENSE_CAP {
        return Err(Error::TooManyQubits { n, cap: DENSE_CAP });
    }
    if costs.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: costs.n() });
    }
    let dim = 1usize << n;
    let mut h = DenseMatrix::zeros(dim);
    let edges: Vec<u64> = match spec.kind() {
        MixerKind::XHypercube => (0..n).map(|q| 1u64 << q).collect(),
        MixerKind::XyRing => ring_bonds(n).into_iter().map(|(i, j)| (1u64 << i) | (1u64 << j)).collect(),
    };
    for x in 0..dim {
        h.set(x, x, Complex64::new(costs.cost(x), 0.0));
        for &flip in &edges {
            let y = x ^ flip as usize;
            let connected = match spec.kind() {
                MixerKind::XHypercube => true,
                MixerKind::XyRing => (x as u64 & flip).count_ones() == 1,
            };
            if connected {
                h.set(x, y, h.get(x, y) - gamma);
            }
        }
    }
    Ok(h)
}

/// Same contract as [`super::evolve_reference`], with a dense exponential per step.
pub fn evolve_dense(
    initial: &StateVector,
    rate: &dyn HoppingRate,
    costs: &Spectrum,
    spec: &MixerSpec,
    steps_per_segment: usize,
    sense: Sense,
) -> Result<StateVector> {
    if steps_per_segment == 0 {
        return Err(invalid("dense integrator needs at least one step per segment"));
    }
    let mut psi = initial.amplitudes().to_vec();
    for w in rate.breakpoints().windows(2) {
        let h = (w[1] - w[0]) / steps_per_segment as f64;
        for r in 0..steps_per_segment {
            let gamma = rate.gamma(w[0] + (r as f64 + 0.5) * h);
            let gen = hamiltonian_matrix(gamma, costs, spec)?.scale(Complex64::new(0.0, -sense.sign() * h));
            psi = expm(&gen).matvec(&psi);
        }
    }
    StateVector::from_amplitudes(initial.n(), psi)
}
