use alloc::vec::Vec;

use num_complex::Complex64;

use super::hamiltonian::{apply_hamiltonian, norm_bound};
use super::Sense;
use crate::error::{invalid, Error, Result};
use crate::mixer::MixerSpec;
use crate::schedule::HoppingRate;
use crate::spectrum::Spectrum;
use crate::state::StateVector;

/// Largest register the reference integrator accepts.
pub const REFERENCE_CAP: usize = 12;

/// Largest `‖h H‖` handled by one Taylor expansion.
const TAYLOR_STEP_NORM: f64 = 0.5;
const TAYLOR_MAX_TERMS: usize = 60;

/// Integrates `i dψ/dt = s (Γ(t) H_M + H_C) ψ` (`s = ±1` by sense).
///
/// Each smooth piece of the rate is split into `steps_per_segment` equal
/// sub-steps; on each the rate is frozen at its midpoint value and the
/// exponential is applied exactly (to machine precision) by a truncated
/// Taylor series of `exp(-i h H)` on sub-intervals with `‖h H‖ ≤ 1/2`.
pub fn evolve_reference(
    initial: &StateVector,
    rate: &dyn HoppingRate,
    costs: &Spectrum,
    spec: &MixerSpec,
    steps_per_segment: usize,
    sense: Sense,
) -> Result<StateVector> {
    let n = initial.n();
    if n > REFERENCE_CAP {
        return Err(Error::TooManyQubits { n, cap: REFERENCE_CAP });
    }
    if costs.n() != n || spec.n() != n {
        return Err(Error::DimensionMismatch { expected: n, found: if costs.n() != n { costs.n() } else { spec.n() } });
    }
    if steps_per_segment == 0 {
        return Err(invalid("reference integrator needs at least one step per segment"));
    }
    let mut psi = initial.clone().into_amplitudes();
    let mut work = Workspace::new(psi.len());
    for w in rate.breakpoints().windows(2) {
        let h = (w[1] - w[0]) / steps_per_segment as f64;
        if h <= 0.0 {
            continue;
        }
        for r in 0..steps_per_segment {
            let gamma = rate.gamma(w[0] + (r as f64 + 0.5) * h);
            expm_action(&mut psi, sense.sign() * h, gamma, costs, spec, &mut work);
        }
    }
    StateVector::from_amplitudes(n, psi)
}

struct Workspace {
    term: Vec<Complex64>,
    next: Vec<Complex64>,
}

impl Workspace {
    fn new(dim: usize) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self { term: alloc::vec![z; dim], next: alloc::vec![z; dim] }
    }
}

/// `psi ← exp(-i t (gamma H_M + H_C)) psi`.
fn expm_action(psi: &mut [Complex64], t: f64, gamma: f64, costs: &Spectrum, spec: &MixerSpec, work: &mut Workspace) {
    let bound = norm_bound(gamma, costs, spec) * t.abs();
    let pieces = libm::ceil(bound / TAYLOR_STEP_NORM).max(1.0) as usize;
    let h = t / pieces as f64;
    let minus_ih = Complex64::new(0.0, -h);
    for _ in 0..pieces {
        work.term.copy_from_slice(psi);
        for k in 1..=TAYLOR_MAX_TERMS {
            apply_hamiltonian(gamma, costs, spec, &work.term, &mut work.next);
            let scale = minus_ih / k as f64;
            let mut size = 0.0f64;
            for (dst, src) in work.term.iter_mut().zip(&work.next) {
                *dst = scale * src;
                size = size.max(dst.norm_sqr());
            }
            for (p, d) in psi.iter_mut().zip(&work.term) {
                *p += d;
            }
            if size < 1e-36 {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::dense;
    use crate::schedule::{ConstantRate, Schedule};
    use crate::TRANSFER_TIME_FACTOR;

    #[test]
    fn zero_rate_keeps_probabilities() {
        let spec = MixerSpec::x_hypercube(3).unwrap();
        let costs = Spectrum::from_costs(3, (0..8).map(|x| x as f64 * 0.7 - 1.0).collect(), None).unwrap();
        let raw: alloc::vec::Vec<Complex64> = (0..8).map(|x| Complex64::new(x as f64 + 1.0, 0.5)).collect();
        let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        let init = StateVector::from_amplitudes(3, raw.iter().map(|a| a / norm).collect()).unwrap();
        let out =
            evolve_reference(&init, &ConstantRate { gamma: 0.0, duration: 2.0 }, &costs, &spec, 3, Sense::Minimize)
                .unwrap();
        for (a, b) in init.probabilities().iter().zip(out.probabilities()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn pure_mixer_is_rx_per_qubit() {
        let spec = MixerSpec::x_hypercube(2).unwrap();
        let costs = Spectrum::from_costs(2, alloc::vec![0.0; 4], None).unwrap();
        let t = 0.83;
        let init = StateVector::basis(2, 0).unwrap();
        let out = evolve_reference(&init, &ConstantRate { gamma: 1.0, duration: t }, &costs, &spec, 1, Sense::Minimize)
            .unwrap();
        // R_X(-2t)|0⟩ = cos t |0⟩ + i sin t |1⟩ on each qubit.
        let (c, s) = (t.cos(), t.sin());
        let want = [
            Complex64::new(c * c, 0.0),
            Complex64::new(0.0, c * s),
            Complex64::new(0.0, c * s),
            Complex64::new(-s * s, 0.0),
        ];
        for (a, b) in out.amplitudes().iter().zip(want) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn two_level_transfer() {
        let delta = 0.8;
        let spec = MixerSpec::x_hypercube(1).unwrap();
        let costs = Spectrum::from_costs(1, alloc::vec![delta, -delta], None).unwrap();
        let rate = ConstantRate { gamma: delta, duration: TRANSFER_TIME_FACTOR / delta };
        let out =
            evolve_reference(&StateVector::uniform(1).unwrap(), &rate, &costs, &spec, 1, Sense::Minimize).unwrap();
        assert!((out.probabilities()[1] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn agrees_with_dense_exponential() {
        let spec = MixerSpec::x_hypercube(4).unwrap();
        let costs = Spectrum::from_costs(4, (0..16).map(|x| ((x * 5) % 7) as f64 - 2.5).collect(), None).unwrap();
        let sched = Schedule::from_levels(alloc::vec![2.0, 1.1, 0.4]).unwrap();
        let init = spec.initial_state().unwrap();
        let a = evolve_reference(&init, &sched, &costs, &spec, 7, Sense::Minimize).unwrap();
        let b = dense::evolve_dense(&init, &sched, &costs, &spec, 7, Sense::Minimize).unwrap();
        assert!(1.0 - a.fidelity(&b).unwrap() < 1e-12);
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            assert!((x - y).norm() < 1e-10);
        }

        let ring = MixerSpec::xy_ring(5, 2).unwrap();
        let costs = Spectrum::from_costs(5, (0..32).map(|x| ((x * 3) % 5) as f64).collect(), None).unwrap();
        let init = ring.initial_state().unwrap();
        let a = evolve_reference(&init, &sched, &costs, &ring, 4, Sense::Maximize).unwrap();
        let b = dense::evolve_dense(&init, &sched, &costs, &ring, 4, Sense::Maximize).unwrap();
        assert!(1.0 - a.fidelity(&b).unwrap() < 1e-12);
    }

    #[test]
    fn over_cap_rejected() {
        let spec = MixerSpec::x_hypercube(13).unwrap();
        let costs = Spectrum::from_costs(13, alloc::vec![0.0; 1 << 13], None).unwrap();
        let init = StateVector::uniform(13).unwrap();
        let rate = ConstantRate { gamma: 1.0, duration: 1.0 };
        assert!(matches!(
            evolve_reference(&init, &rate, &costs, &spec, 1, Sense::Minimize),
            Err(Error::TooManyQubits { .. })
        ));
    }
}
