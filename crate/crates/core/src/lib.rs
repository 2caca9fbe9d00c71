//! Sample-guided quantum walk for binary optimization.
//!
//! The crate is split the same way the algorithm is:
//!
//! - [`poly`] and [`spectrum`] hold the multilinear cost polynomial and its
//!   brute-force spectrum (the oracle every other module is checked against).
//! - [`problems`] compiles MaxCut, MIS, portfolio, LABS, MAX-k-SAT and TSP
//!   instances into polynomials.
//! - [`mixer`] defines walk connectivity (hypercube or Hamming-weight
//!   preserving ring) and initial states.
//! - [`schedule`] is the classical offline part: gap sampling, the
//!   piecewise-linear hopping rate, the nested layer discretization and the
//!   Bézier baseline schedule.
//! - [`engine`] evolves a [`StateVector`] through a layer plan, through a
//!   reference exponential integrator, or through a QAOA ansatz.
//! - [`metrics`] scores a state against a spectrum.
//! - [`optimize`] is a bounded Nelder-Mead used to tune the two baselines.
//! - [`circuit`] lowers a layer plan to a gate list (H, CNOT, RZ, RX).
//!
//! Bit order: variable `x_i` is bit `i` of a basis-state index.
//!
//! The crate is `no_std` and needs only `alloc`.
#![no_std]
// `!(x > 0.0)` is used deliberately so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bits;
pub mod circuit;
pub mod engine;
mod error;
pub mod metrics;
pub mod mixer;
pub mod optimize;
pub mod pipeline;
pub mod poly;
pub mod problems;
pub mod rng;
pub mod schedule;
pub mod spectrum;
pub mod state;

pub use bits::BitString;
pub use error::{Error, Result};
pub use mixer::{MixerKind, MixerSpec};
pub use poly::{Monomial, Polynomial};
pub use spectrum::Spectrum;
pub use state::StateVector;

/// `π / (2√2)`: the time a balanced two-level transfer needs per unit of
/// hopping rate.
pub const TRANSFER_TIME_FACTOR: f64 = core::f64::consts::PI / (2.0 * core::f64::consts::SQRT_2);
