//! Compiled polynomials against the direct formulas, on random instances of
//! every family.

use proptest::prelude::*;
use samba_core::problems::{gen_erdos_renyi, gen_maxksat, gen_portfolio, gen_tsp, gen_unit_disk, Problem, SymmetryTag};

fn rel_close(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-12 * a.abs().max(b.abs()).max(1.0)
}

fn check(problem: &Problem) -> Result<(), TestCaseError> {
    let compiled = problem.compile().unwrap();
    let spec = problem.default_mixer().unwrap();
    for x in spec.feasible_states().unwrap() {
        let (p, d) = (compiled.poly.evaluate_index(x), problem.direct_cost(x));
        prop_assert!(rel_close(p, d), "{} at {x}: poly {p} vs direct {d}", problem.family());
    }
    prop_assert!(compiled.symmetry.holds_on(&compiled.poly, spec.feasible_states().unwrap()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn maxcut(n in 2usize..=10, p in 0.0f64..=1.0, weighted in any::<bool>(), seed in any::<u64>()) {
        check(&Problem::Maxcut { graph: gen_erdos_renyi(n, p, weighted, (-1.0, 2.0), seed).unwrap() })?;
    }

    #[test]
    fn mis(n in 2usize..=10, radius in 0.1f64..0.9, penalty in prop::option::of(0.5f64..5.0), seed in any::<u64>()) {
        check(&Problem::Mis { graph: gen_unit_disk(n, radius, 1.0, seed).unwrap(), penalty })?;
    }

    #[test]
    fn portfolio(n in 2usize..=10, k_frac in 0.0f64..=1.0, lambda in 0.0f64..2.0, seed in any::<u64>()) {
        let k = ((n as f64) * k_frac).round() as usize;
        check(&Problem::Portfolio { instance: gen_portfolio(n, k, lambda, seed).unwrap() })?;
    }

    #[test]
    fn labs(n in 2usize..=10) {
        check(&Problem::Labs { n })?;
    }

    #[test]
    fn maxksat(n in 3usize..=10, k in 1usize..=3, alpha in 0.5f64..5.0, seed in any::<u64>()) {
        prop_assume!((alpha * n as f64).floor() >= 1.0);
        check(&Problem::Maxksat { instance: gen_maxksat(n, k, alpha, seed).unwrap() })?;
    }

    #[test]
    fn tsp(m in 2usize..=4, lo in 0.0f64..5.0, span in 0.0f64..50.0, seed in any::<u64>()) {
        check(&Problem::Tsp { instance: gen_tsp(m, (lo, lo + span), seed).unwrap() })?;
    }
}

#[test]
fn symmetry_tags_by_family() {
    let g = gen_erdos_renyi(4, 0.5, false, (1.0, 1.0), 0).unwrap();
    assert_eq!(Problem::Maxcut { graph: g.clone() }.compile().unwrap().symmetry, SymmetryTag::GlobalBitFlip);
    assert_eq!(Problem::Labs { n: 5 }.compile().unwrap().symmetry, SymmetryTag::GlobalBitFlip);
    assert_eq!(Problem::Mis { graph: g, penalty: None }.compile().unwrap().symmetry, SymmetryTag::None);
}
