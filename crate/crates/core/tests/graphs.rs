mod common;

use std::collections::HashSet;

use common::{graph_strategy, random_graph, seeded};
use graphonlab::graphs::{
    canonical_form, enumerate_labelled, graph6, hom_density, induced_density, is_free_of, unlabelled_classes,
};
use graphonlab::Graph;
use proptest::prelude::*;
use rand::seq::SliceRandom;

/// All permutations of `0..n` (Heap's algorithm).
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0; n];
    out.push(p.clone());
    let mut i = 0;
    while i < n {
        if c[i] < i {
            let j = if i % 2 == 0 { 0 } else { c[i] };
            p.swap(j, i);
            out.push(p.clone());
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Brute-force isomorphism oracle: try every relabelling.
fn isomorphic(a: &Graph, b: &Graph, perms: &[Vec<usize>]) -> bool {
    a.n() == b.n() && a.edge_count() == b.edge_count() && perms.iter().any(|p| &a.permuted(p) == b)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn canonical_form_is_isomorphism_invariant(g in graph_strategy(7), seed in any::<u64>()) {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(&mut seeded(seed));
        let h = g.permuted(&perm);
        let (cg, ch) = (canonical_form(&g), canonical_form(&h));
        prop_assert_eq!(&cg, &ch);
        prop_assert_eq!(canonical_form(&cg), cg.clone());
        prop_assert!(isomorphic(&g, &cg, &permutations(g.n())));
    }

    #[test]
    fn canonical_forms_separate_non_isomorphic(a in graph_strategy(6), b in graph_strategy(6)) {
        let same = canonical_form(&a) == canonical_form(&b);
        prop_assert_eq!(same, isomorphic(&a, &b, &permutations(a.n())));
    }

    #[test]
    fn graph6_round_trip_large(n in 1usize..=64, p in 0.0f64..1.0, seed in any::<u64>()) {
        let g = random_graph(&mut seeded(seed), n, p);
        prop_assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
    }

    #[test]
    fn hom_density_of_k1_is_one(g in graph_strategy(8)) {
        prop_assert_eq!(hom_density(&Graph::empty(1), &g).unwrap().value(), 1.0);
    }

    #[test]
    fn self_induced_density_positive(g in graph_strategy(7)) {
        prop_assert!(induced_density(&g, &g).unwrap().count > 0);
    }
}

#[test]
fn canonical_classes_match_brute_force_at_five() {
    let perms = permutations(5);
    let mut reps: Vec<Graph> = Vec::new();
    for g in enumerate_labelled(5).unwrap() {
        if !reps.iter().any(|r| isomorphic(r, &g, &perms)) {
            reps.push(g);
        }
    }
    let forms: HashSet<Graph> = enumerate_labelled(5).unwrap().map(|g| canonical_form(&g)).collect();
    assert_eq!(reps.len(), 34);
    assert_eq!(forms.len(), reps.len());
}

#[test]
fn canonical_form_on_symmetric_seven_vertex_corpus() {
    let perms = permutations(7);
    let mut rng = seeded(11);
    for class in unlabelled_classes(7).unwrap().iter().step_by(7) {
        let mut p: Vec<usize> = (0..7).collect();
        p.shuffle(&mut rng);
        let h = class.graph.permuted(&p);
        assert_eq!(canonical_form(&h), class.graph);
        assert!(isomorphic(&h, &class.graph, &perms));
        // orbit size from the oracle
        let orbit: HashSet<Graph> = perms.iter().map(|q| class.graph.permuted(q)).collect();
        assert_eq!(orbit.len() as u64, class.orbit_size);
    }
}

#[test]
fn graph6_exhaustive_round_trip_to_six() {
    for n in 1..=6 {
        for g in enumerate_labelled(n).unwrap() {
            assert_eq!(graph6::decode(&graph6::encode(&g)).unwrap(), g);
        }
    }
}

/// Induced densities of all `k`-vertex labelled patterns partition the
/// embeddings of `[k]` into every host with `k <= n <= 6`.
#[test]
fn induced_densities_sum_to_one() {
    for k in 1..=4 {
        let patterns: Vec<Graph> = enumerate_labelled(k).unwrap().collect();
        for n in k..=6 {
            for host in unlabelled_classes(n).unwrap().iter() {
                let mut count = 0u128;
                let mut total = 0u128;
                for h in &patterns {
                    let d = induced_density(h, &host.graph).unwrap();
                    count += d.count;
                    total = d.total;
                }
                assert_eq!(count, total, "k={k} host={}", graph6::encode(&host.graph));
            }
        }
    }
}

#[test]
fn density_examples() {
    let d = induced_density(&Graph::complete(2), &Graph::path(3)).unwrap();
    assert_eq!((d.count, d.total), (4, 6));
    let t = hom_density(&Graph::complete(2), &Graph::complete(3)).unwrap();
    assert_eq!((t.count, t.total), (6, 9));
}

#[test]
fn freeness_matches_induced_density() {
    let forbidden = [Graph::complete(3), Graph::cycle(4)];
    let mut rng = seeded(4);
    for _ in 0..200 {
        let g = random_graph(&mut rng, 7, 0.4);
        let by_density = forbidden.iter().all(|h| induced_density(h, &g).unwrap().count == 0);
        assert_eq!(is_free_of(&g, &forbidden), by_density);
    }
}

#[test]
fn enumeration_is_complete_and_distinct() {
    for n in 1..=5 {
        let all: HashSet<Graph> = enumerate_labelled(n).unwrap().collect();
        assert_eq!(all.len(), 1 << (n * (n - 1) / 2));
    }
}
