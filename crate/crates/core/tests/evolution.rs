//! Layered evolution against the continuous-time integrators and closed forms.

use proptest::prelude::*;
use samba_core::engine::dense::evolve_dense;
use samba_core::engine::{evolve_layer_plan, evolve_reference, EvolveOptions, Sense};
use samba_core::problems::{gen_portfolio, Problem};
use samba_core::schedule::{ConstantRate, Layer, LayerPlan};
use samba_core::spectrum::Spectrum;
use samba_core::{MixerSpec, Polynomial, StateVector};

fn random_spectrum(n: usize, costs: &[f64], feasible: Option<Vec<bool>>) -> Spectrum {
    let costs = (0..1usize << n).map(|j| costs[j % costs.len()]).collect();
    Spectrum::from_costs(n, costs, feasible).unwrap()
}

fn infidelity(a: &StateVector, b: &StateVector) -> f64 {
    1.0 - a.fidelity(b).unwrap()
}

fn layers() -> impl Strategy<Value = Vec<(f64, f64)>> {
    prop::collection::vec((0.0f64..1.0, 0.0f64..3.0), 0..12)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn layers_are_unitary(n in 1usize..=6, costs in prop::collection::vec(-5.0f64..5.0, 1..9), raw in layers(), maximize in any::<bool>()) {
        let spectrum = random_spectrum(n, &costs, None);
        let spec = MixerSpec::x_hypercube(n).unwrap();
        let plan = LayerPlan::from_layers(raw.into_iter().map(|(dt, g)| Layer { dt, theta: dt * g }).collect());
        let sense = if maximize { Sense::Maximize } else { Sense::Minimize };
        let opts = EvolveOptions { sense, ..Default::default() };
        let trace = evolve_layer_plan(&spec.initial_state().unwrap(), &plan, &spectrum, &spec, &opts).unwrap();
        prop_assert!((trace.final_state.norm_sqr() - 1.0).abs() < 1e-12);
        for s in &trace.snapshots {
            let total: f64 = s.ranking_probs.iter().sum();
            prop_assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn ring_keeps_weight(n in 2usize..=7, k_frac in 0.0f64..=1.0, costs in prop::collection::vec(-5.0f64..5.0, 1..9), raw in layers(), inner in 1usize..6) {
        let k = ((n as f64) * k_frac).round() as usize;
        let spec = MixerSpec::xy_ring(n, k).unwrap();
        let spectrum = random_spectrum(n, &costs, Some(spec.feasible_mask().unwrap()));
        let plan = LayerPlan::from_layers(raw.into_iter().map(|(dt, g)| Layer { dt, theta: dt * g }).collect());
        let opts = EvolveOptions { inner_trotter: inner, ..Default::default() };
        let trace = evolve_layer_plan(&spec.initial_state().unwrap(), &plan, &spectrum, &spec, &opts).unwrap();
        let leaked: f64 = trace
            .final_state
            .probabilities()
            .iter()
            .enumerate()
            .filter(|&(x, _)| (x as u64).count_ones() as usize != k)
            .map(|(_, p)| p)
            .sum();
        prop_assert!(leaked < 1e-24, "leaked {leaked}");
    }

    #[test]
    fn reference_matches_dense(n in 1usize..=4, costs in prop::collection::vec(-3.0f64..3.0, 1..9), gamma in 0.0f64..3.0, t in 0.0f64..3.0, ring in any::<bool>()) {
        let spec = if ring && n >= 2 { MixerSpec::xy_ring(n, n / 2).unwrap() } else { MixerSpec::x_hypercube(n).unwrap() };
        let spectrum = random_spectrum(n, &costs, spec.hamming_weight().map(|_| spec.feasible_mask().unwrap()));
        let rate = ConstantRate { gamma, duration: t };
        let psi0 = spec.initial_state().unwrap();
        let a = evolve_reference(&psi0, &rate, &spectrum, &spec, 1, Sense::Minimize).unwrap();
        let b = evolve_dense(&psi0, &rate, &spectrum, &spec, 1, Sense::Minimize).unwrap();
        prop_assert!(infidelity(&a, &b) < 1e-12);
    }
}

/// One qubit under `Γ X + diag(0, d)` from |0>: Rabi oscillation.
#[test]
fn two_state_closed_form() {
    let spec = MixerSpec::x_hypercube(1).unwrap();
    let psi0 = StateVector::basis(1, 0).unwrap();
    for &(gamma, d, t) in &[(0.5, 1.0, 0.7), (1.0, 0.0, 1.2), (0.3, 2.0, 5.0), (2.0, -1.5, 0.4)] {
        let spectrum = Spectrum::from_costs(1, vec![0.0, d], None).unwrap();
        let omega = f64::hypot(gamma, d / 2.0);
        let expected = (gamma / omega).powi(2) * (omega * t).sin().powi(2);
        let rate = ConstantRate { gamma, duration: t };
        let exact = evolve_reference(&psi0, &rate, &spectrum, &spec, 1, Sense::Minimize).unwrap();
        assert!((exact.probabilities()[1] - expected).abs() < 1e-12);

        let plan = LayerPlan::from_rate(&rate, 20_000).unwrap();
        let layered = evolve_layer_plan(&psi0, &plan, &spectrum, &spec, &EvolveOptions::default()).unwrap();
        assert!((layered.final_state.probabilities()[1] - expected).abs() < 1e-6);
    }
}

/// First-order splitting: doubling the layer count roughly halves the error
/// amplitude, and the ring mixer's inner splitting does not spoil that.
#[test]
fn ring_layers_converge_to_reference() {
    let problem = Problem::Portfolio { instance: gen_portfolio(6, 3, 0.5, 2).unwrap() };
    let poly: Polynomial = problem.compile().unwrap().poly;
    let spec = problem.default_mixer().unwrap();
    let spectrum = Spectrum::enumerate(&poly, 14).unwrap().restrict(spec.feasible_mask().unwrap()).unwrap();
    let rate = ConstantRate { gamma: 0.8, duration: 2.0 };
    let psi0 = spec.initial_state().unwrap();
    let exact = evolve_reference(&psi0, &rate, &spectrum, &spec, 1, Sense::Minimize).unwrap();
    let errors: Vec<f64> = [16usize, 32, 64, 128]
        .iter()
        .map(|&p| {
            let plan = LayerPlan::from_rate(&rate, p).unwrap();
            let opts = EvolveOptions { inner_trotter: 8, ..Default::default() };
            let s = evolve_layer_plan(&psi0, &plan, &spectrum, &spec, &opts).unwrap().final_state;
            infidelity(&s, &exact).sqrt()
        })
        .collect();
    for w in errors.windows(2) {
        let ratio = w[0] / w[1];
        assert!((1.6..2.5).contains(&ratio), "errors {errors:?}");
    }
}

proptest! {
    /// From the local superposition of a pair split by `2δ`, the lower state
    /// is found with probability `1/2 + Γδ/(Γ²+δ²) sin²(t √(Γ²+δ²))`.
    #[test]
    fn guided_pair_closed_form(gamma in 0.0f64..4.0, delta in 0.01f64..4.0, t in 0.0f64..6.0) {
        let spec = MixerSpec::x_hypercube(1).unwrap();
        let spectrum = Spectrum::from_costs(1, vec![delta, -delta], None).unwrap();
        let rate = ConstantRate { gamma, duration: t };
        let out = evolve_reference(&StateVector::uniform(1).unwrap(), &rate, &spectrum, &spec, 1, Sense::Minimize).unwrap();
        let w2 = gamma * gamma + delta * delta;
        let expected = 0.5 + gamma * delta / w2 * (t * w2.sqrt()).sin().powi(2);
        prop_assert!((out.probabilities()[1] - expected).abs() < 1e-10);
    }
}
