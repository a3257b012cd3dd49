use chromathresh_core::detect::{detect, max_color_component};
use chromathresh_core::graph::{edge_endpoints, edge_index};
use chromathresh_core::moments::{expected_mono, threshold};
use chromathresh_core::montecarlo::{run_trials, trial_outcomes, TrialPlan};
use chromathresh_core::oracle::{count_k_matchings, count_occurrences};
use chromathresh_core::{Chromatic, ColoredGraph, PropertyQuery, SeedSpec, SubgraphKind};
use num_rational::BigRational;
use proptest::prelude::*;

fn kinds() -> impl Strategy<Value = SubgraphKind> {
    prop_oneof![Just(SubgraphKind::Matching), Just(SubgraphKind::Clique), Just(SubgraphKind::Tree)]
}

fn chromatics() -> impl Strategy<Value = Chromatic> {
    prop_oneof![Just(Chromatic::Mono), Just(Chromatic::Hetero)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn edge_indexing_round_trips(n in 2usize..300, a in 0usize..300, b in 0usize..300) {
        let (u, v) = (a % n, b % n);
        prop_assume!(u < v);
        let e = edge_index(u, v, n).unwrap();
        prop_assert_eq!(edge_endpoints(e, n).unwrap(), (u, v));
    }

    #[test]
    fn sampling_is_a_pure_function_of_the_seed(n in 1usize..30, r in 1u32..9, seed: u64, t in 0u64..1000) {
        let a = ColoredGraph::sample(n, r, SeedSpec::new(seed, t)).unwrap();
        let b = ColoredGraph::sample(n, r, SeedSpec::new(seed, t)).unwrap();
        prop_assert!(a.colors().iter().all(|&c| c < r));
        prop_assert_eq!(a, b);
    }

    #[test]
    fn detection_matches_enumeration(
        n in 2usize..8, r in 1u32..5, seed: u64, kind in kinds(), chromatic in chromatics(), kpick: u16,
    ) {
        let g = ColoredGraph::sample(n, r, SeedSpec::new(seed, 0)).unwrap();
        let max = PropertyQuery::max_k(kind, n);
        let q = PropertyQuery::new(kind, chromatic, 1 + kpick as usize % max);
        let d = detect(&g, &q).unwrap();
        prop_assert_eq!(d.exists, count_occurrences(&g, &q).unwrap() > 0);
        prop_assert_eq!(d.exists, d.witness.is_some());
    }

    #[test]
    fn mono_tree_follows_largest_class_component(n in 2usize..40, r in 1u32..6, seed: u64, k in 1usize..40) {
        prop_assume!(k <= n);
        let g = ColoredGraph::sample(n, r, SeedSpec::new(seed, 1)).unwrap();
        let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Mono, k);
        prop_assert_eq!(detect(&g, &q).unwrap().exists, max_color_component(&g).1 >= k);
    }

    #[test]
    fn expectation_is_matchings_over_r_to_k_minus_1(n in 2u64..40, r in 1u64..50, kpick: u8) {
        let k = 1 + kpick as u64 % (n / 2);
        let e = expected_mono(n, k, r).unwrap().exact.unwrap();
        let q = count_k_matchings(n as usize, k as usize).unwrap();
        let rhs = BigRational::new((q * r).into(), num_bigint::BigUint::from(r).pow(k as u32).into());
        prop_assert_eq!(e, rhs);
    }

    #[test]
    fn thresholds_solve_unit_expectation(n in 6u64..2000, k in 2u64..4) {
        prop_assume!(2 * k <= n);
        let t = threshold(SubgraphKind::Matching, n, k).unwrap();
        // E(X) at r = T is 1 when T is fed back exactly in log space
        let ln_e = expected_mono(n, k, 1).unwrap().log_value - (k - 1) as f64 * t.log_value;
        prop_assert!(ln_e.abs() < 1e-9);
    }
}

#[test]
fn trials_are_reproducible_sequences() {
    let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Hetero, 4);
    let plan = TrialPlan::new(8, 3, q, 200, 17).unwrap();
    assert_eq!(trial_outcomes(&plan).unwrap(), trial_outcomes(&plan).unwrap());
    assert_eq!(run_trials(&plan).unwrap(), run_trials(&plan).unwrap());
}
