use super::*;
use crate::graph::{all_edges, edge_count};
use crate::oracle::count_occurrences;
use crate::query::PropertyLabel;
use crate::rng::SeedSpec;
use proptest::prelude::*;

/// Witness checker written against the raw color array only.
fn witness_ok(g: &ColoredGraph, q: &PropertyQuery, w: &Witness) -> bool {
    let n = g.n();
    let mut pairs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            pairs.push((u, v));
        }
    }
    if w.edges.iter().any(|&e| e >= pairs.len()) {
        return false;
    }
    let ends: Vec<(usize, usize)> = w.edges.iter().map(|&e| pairs[e]).collect();
    let colors: Vec<u32> = w.edges.iter().map(|&e| g.colors()[e]).collect();
    let color_ok = match q.chromatic {
        Chromatic::Mono => colors.iter().all(|&c| c == colors[0]),
        Chromatic::Hetero => {
            let mut s = colors.clone();
            s.sort();
            s.dedup();
            s.len() == colors.len()
        }
    };
    let mut touched: Vec<usize> = ends.iter().flat_map(|&(u, v)| [u, v]).collect();
    touched.sort();
    touched.dedup();
    let shape_ok = match q.kind {
        SubgraphKind::Matching => ends.len() == q.k && touched.len() == 2 * q.k,
        SubgraphKind::Clique => {
            let vs = &w.vertices;
            let mut distinct = vs.clone();
            distinct.dedup();
            distinct.len() == q.k
                && vs.iter().all(|&v| v < n)
                && ends.len() == q.k * (q.k - 1) / 2
                && vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| ends.contains(&(a.min(b), a.max(b)))))
        }
        SubgraphKind::Tree => {
            if q.k == 1 {
                ends.is_empty() && w.vertices.len() == 1
            } else {
                // k-1 edges on k vertices, connected
                let mut label: Vec<usize> = (0..n).collect();
                for &(u, v) in &ends {
                    let (a, b) = (label[u], label[v]);
                    if a == b {
                        return false;
                    }
                    for l in label.iter_mut() {
                        if *l == b {
                            *l = a;
                        }
                    }
                }
                ends.len() == q.k - 1 && touched.len() == q.k
            }
        }
    };
    color_ok && shape_ok
}

fn random_graph(seed: u64) -> ColoredGraph {
    let mut rng = crate::rng::SplitMix64::new(seed);
    let n = 2 + rng.below(7) as usize;
    let r = 1 + rng.below(5) as u32;
    ColoredGraph::sample(n, r, SeedSpec::new(seed, 0)).unwrap()
}

#[test]
fn one_color_always_has_mono_matchings() {
    for n in 2..12 {
        let g = ColoredGraph::constant(n, 1, 0).unwrap();
        for k in 1..=n / 2 {
            let q = PropertyQuery::mono_matching(k);
            let d = detect(&g, &q).unwrap();
            assert!(d.exists);
            assert!(witness_ok(&g, &q, d.witness.as_ref().unwrap()));
        }
        if n >= 4 {
            assert!(!detect(&g, &PropertyQuery::hetero_matching(2)).unwrap().exists);
        }
    }
}

#[test]
fn max_matching_examples() {
    let n = 4;
    let path = [(0, 1), (1, 2), (2, 3)].map(|(u, v)| edge_index_unchecked(u, v, n));
    assert_eq!(max_matching(&path, n), Ok(2));
    let tri = [(0, 1), (1, 2), (0, 2)].map(|(u, v)| edge_index_unchecked(u, v, 3));
    assert_eq!(max_matching(&tri, 3), Ok(1));
    let mut petersen = Vec::new();
    for i in 0..5 {
        for (u, v) in [(i, (i + 1) % 5), (i, i + 5), (i + 5, (i + 2) % 5 + 5)] {
            petersen.push(edge_index_unchecked(u.min(v), u.max(v), 10));
        }
    }
    assert_eq!(max_matching(&petersen, 10), Ok(5));
    assert!(max_matching(&[99], 4).is_err());
}

#[test]
fn budget_exhaustion_is_an_error() {
    let g = ColoredGraph::sample(10, 3, SeedSpec::new(5, 5)).unwrap();
    let err = detect_with_budget(&g, &PropertyQuery::hetero_matching(3), 1).unwrap_err();
    assert_eq!(err, Error::BudgetExhausted { budget: 1 });
}

#[test]
fn trivial_sizes() {
    let g = ColoredGraph::sample(5, 7, SeedSpec::new(1, 2)).unwrap();
    for label in PropertyLabel::all() {
        let q = label.with_k(1);
        let d = detect(&g, &q).unwrap();
        assert!(d.exists);
        assert!(witness_ok(&g, &q, d.witness.as_ref().unwrap()), "{label}");
    }
}

#[test]
fn detect_matches_oracle_on_seeded_graphs() {
    for seed in 0..300 {
        let g = random_graph(seed);
        for label in PropertyLabel::all() {
            for k in 1..=PropertyQuery::max_k(label.kind, g.n()).min(5) {
                let q = label.with_k(k);
                let count = count_occurrences(&g, &q).unwrap();
                let d = detect(&g, &q).unwrap();
                assert_eq!(d.exists, count > 0, "seed {seed} {label} k={k} colors {:?}", g.colors());
                if let Some(w) = &d.witness {
                    assert!(witness_ok(&g, &q, w), "seed {seed} {label} k={k} witness {w:?}");
                }
            }
        }
    }
}

#[test]
fn mono_tree_reduces_to_component_size() {
    for seed in 0..200 {
        let g = random_graph(seed + 1000);
        let (_, size) = max_color_component(&g);
        for k in 1..=g.n() {
            let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Mono, k);
            assert_eq!(detect(&g, &q).unwrap().exists, size >= k);
        }
    }
}

#[test]
fn spanning_rainbow_tree_agrees_with_growth_search() {
    for seed in 0..300 {
        let mut rng = crate::rng::SplitMix64::new(seed ^ 0xABCD);
        let n = 1 + rng.below(8) as usize;
        let r = 1 + rng.below(edge_count(n).max(1) as u64 + 2) as u32;
        let g = ColoredGraph::sample(n, r, SeedSpec::new(seed, 9)).unwrap();
        let by_matroid = rainbow_spanning_tree(&g);
        let by_search = rainbow_tree_search(&g, n, &mut Budget::new(DEFAULT_BUDGET)).unwrap();
        assert_eq!(by_matroid.exists, by_search.is_some(), "seed {seed}");
        let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Hetero, n);
        if let Some(w) = &by_matroid.witness {
            assert!(witness_ok(&g, &q, w));
        }
        if let Some(edges) = by_search {
            assert!(witness_ok(&g, &q, &Witness::from_edges(n, edges)));
        }
    }
}

#[test]
fn witnesses_are_deterministic() {
    let g = ColoredGraph::sample(30, 4, SeedSpec::new(77, 0)).unwrap();
    for label in PropertyLabel::all() {
        let q = label.with_k(4);
        assert_eq!(detect(&g, &q).unwrap(), detect(&g, &q).unwrap());
    }
}

#[test]
fn larger_instances_have_valid_witnesses() {
    let g = ColoredGraph::sample(60, 7, SeedSpec::new(3, 0)).unwrap();
    let q = PropertyQuery::hetero_matching(7);
    let d = detect(&g, &q).unwrap();
    assert!(d.exists);
    assert!(witness_ok(&g, &q, d.witness.as_ref().unwrap()));

    let g = ColoredGraph::sample(50, 3, SeedSpec::new(4, 0)).unwrap();
    let q = PropertyQuery::new(SubgraphKind::Tree, Chromatic::Mono, 25);
    let d = detect(&g, &q).unwrap();
    assert!(witness_ok(&g, &q, d.witness.as_ref().unwrap()));

    let g = ColoredGraph::sample(40, 2, SeedSpec::new(4, 0)).unwrap();
    let q = PropertyQuery::new(SubgraphKind::Clique, Chromatic::Mono, 5);
    if let Some(w) = detect(&g, &q).unwrap().witness {
        assert!(witness_ok(&g, &q, &w));
    }

    let g = ColoredGraph::sample(12, 1000, SeedSpec::new(4, 0)).unwrap();
    for kind in [SubgraphKind::Clique, SubgraphKind::Tree] {
        let q = PropertyQuery::new(kind, Chromatic::Hetero, 6);
        let d = detect(&g, &q).unwrap();
        assert!(d.exists);
        assert!(witness_ok(&g, &q, d.witness.as_ref().unwrap()));
    }
}

#[test]
fn checker_rejects_bad_witnesses() {
    let g = ColoredGraph::new(4, 6, vec![0, 1, 2, 3, 4, 5]).unwrap();
    let q = PropertyQuery::hetero_matching(2);
    // edges 01 and 02 share vertex 0
    assert!(!witness_ok(&g, &q, &Witness::from_edges(4, vec![0, 1])));
    assert!(witness_ok(&g, &q, &Witness::from_edges(4, vec![0, 5])));
    let mono = PropertyQuery::mono_matching(2);
    assert!(!witness_ok(&g, &mono, &Witness::from_edges(4, vec![0, 5])));
}

fn greedy_matching(edges: &[EdgeIdx], n: usize) -> usize {
    let pairs = all_edges(n);
    let mut used = vec![false; n];
    let mut size = 0;
    for &e in edges {
        let (u, v) = pairs[e];
        if !used[u] && !used[v] {
            used[u] = true;
            used[v] = true;
            size += 1;
        }
    }
    size
}

proptest! {
    #[test]
    fn matching_is_sandwiched(n in 2usize..30, seed in any::<u64>(), r in 1u32..6) {
        let g = ColoredGraph::sample(n, r, SeedSpec::new(seed, 0)).unwrap();
        for (_, class) in g.classes() {
            let m = max_matching(&class, n).unwrap();
            prop_assert!(greedy_matching(&class, n) <= m);
            prop_assert!(m <= n / 2);
        }
    }
}
