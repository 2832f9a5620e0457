mod common;

use std::collections::HashMap;

use common::seeded;
use graphonlab::classes::{
    census, census_by_scan, colouring_number, crs_member, growth_series, max_entropy_prediction, uniform_exact,
    uniform_mcmc, HereditaryClass,
};
use graphonlab::graphons::p_induced;
use graphonlab::graphs::{canonical_form, enumerate_labelled, graph6, pairs, unlabelled_classes};
use graphonlab::{Error, Graph, StepGraphon};
use rand::Rng;

fn class(name: &str) -> HereditaryClass {
    name.parse().unwrap()
}

fn builtins() -> Vec<HereditaryClass> {
    ["all", "bipartite", "split", "triangle_free", "kt_free:4", "crs:3,1", "crs:2,0", "forbidden:C~,Bw"]
        .iter()
        .map(|s| class(s))
        .collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Every non-isomorphic graph on `n` vertices, labelled graphs up to `n = 5`.
fn corpus(n: usize) -> Vec<Graph> {
    if n <= 5 {
        enumerate_labelled(n).unwrap().collect()
    } else {
        unlabelled_classes(n).unwrap().iter().map(|c| c.graph.clone()).collect()
    }
}

#[test]
fn membership_is_hereditary() {
    for c in builtins() {
        for n in 2..=6 {
            for g in enumerate_labelled(n).unwrap().filter(|g| c.contains(g)) {
                for v in 0..n {
                    assert!(c.contains(&g.delete_vertex(v).unwrap()), "{c}: {} minus {v}", graph6::encode(&g));
                }
            }
        }
    }
}

#[test]
fn census_sandwich_and_scan_agreement() {
    for c in builtins() {
        for n in 1..=7 {
            let row = census(&c, n).unwrap();
            assert!(row.unlabelled <= row.labelled);
            assert!(row.labelled <= factorial(n) * row.unlabelled);
            // independent count: orbit sizes of the member classes
            let reps = unlabelled_classes(n).unwrap();
            let members: Vec<_> = reps.iter().filter(|r| c.contains(&r.graph)).collect();
            assert_eq!(row.unlabelled, members.len() as u64, "{c} n={n}");
            assert_eq!(row.labelled, members.iter().map(|r| r.orbit_size).sum::<u64>(), "{c} n={n}");
            if n <= 6 {
                assert_eq!(census_by_scan(&c, n).unwrap(), row);
            }
        }
        let row = census(&c, 8).unwrap();
        assert!(row.unlabelled <= row.labelled && row.labelled <= factorial(8) * row.unlabelled);
    }
    assert_eq!(census(&class("all"), 8).unwrap().unlabelled, 12346);
    assert_eq!(census(&class("triangle_free"), 8).unwrap().unlabelled, 410);
    assert_eq!(census(&class("bipartite"), 8).unwrap().unlabelled, 303);
}

#[test]
fn containment_lattice() {
    let (bip, tri, split) = (class("bipartite"), class("triangle_free"), class("split"));
    for n in 1..=6 {
        for g in corpus(n) {
            if bip.contains(&g) {
                assert!(tri.contains(&g));
            }
        }
    }
    let k3 = Graph::complete(3);
    let c4 = Graph::cycle(4);
    assert!(split.contains(&k3) && !bip.contains(&k3));
    assert!(bip.contains(&c4) && !split.contains(&c4));
}

#[test]
fn split_matches_forbidden_subgraphs() {
    let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
    let forbidden = HereditaryClass::forbidden(vec![two_k2, Graph::cycle(4), Graph::cycle(5)]).unwrap();
    let split = class("split");
    for n in 1..=7 {
        for g in corpus(n) {
            assert_eq!(split.contains(&g), forbidden.contains(&g), "{}", graph6::encode(&g));
        }
    }
}

/// Exhaustive split test: some vertex subset is a clique with an
/// independent complement.
fn brute_split(g: &Graph) -> bool {
    let n = g.n();
    (0u64..1 << n).any(|s| {
        let clique = (0..n).all(|u| (u + 1..n).all(|v| s >> u & s >> v & 1 == 0 || g.has_edge(u, v)));
        let indep = (0..n).all(|u| (u + 1..n).all(|v| (s >> u | s >> v) & 1 == 1 || !g.has_edge(u, v)));
        clique && indep
    })
}

#[test]
fn crs_member_against_brute_force() {
    assert!(!crs_member(&Graph::cycle(4), 2, 1).unwrap());
    assert!(!crs_member(&Graph::cycle(5), 2, 1).unwrap());
    assert!(crs_member(&Graph::cycle(4), 2, 0).unwrap());
    let mut rng = seeded(31);
    for _ in 0..500 {
        let n = rng.random_range(1..=9);
        let p = rng.random();
        let g = common::random_graph(&mut rng, n, p);
        assert_eq!(crs_member(&g, 2, 1).unwrap(), brute_split(&g), "{}", graph6::encode(&g));
        assert_eq!(crs_member(&g, 2, 0).unwrap(), g.is_bipartite());
        assert_eq!(crs_member(&g, 1, 1).unwrap(), g.edge_count() == pairs(n));
    }
    assert!(matches!(crs_member(&Graph::empty(3), 2, 3), Err(Error::Domain(_))));
}

#[test]
fn induced_densities_detect_the_class() {
    let w = StepGraphon::wrs(2, 0).unwrap();
    let tri = class("triangle_free");
    for n in 1..=5 {
        for rep in unlabelled_classes(n).unwrap().iter() {
            let p = p_induced(&rep.graph, &w).unwrap();
            if !tri.contains(&rep.graph) {
                assert_eq!(p, 0.0);
            }
            if p > 0.0 {
                assert!(tri.contains(&rep.graph));
            }
        }
    }
}

#[test]
fn colouring_and_predictions() {
    for (name, expected, prediction) in [
        ("bipartite", (2, Some(0)), 0.5),
        ("split", (2, Some(1)), 0.5),
        ("triangle_free", (2, Some(0)), 0.5),
        ("crs:3,1", (3, Some(1)), 2.0 / 3.0),
    ] {
        let c = class(name);
        let col = colouring_number(&c, 5, 6).unwrap();
        assert_eq!((col.r_hat, col.s_witness), expected, "{name}");
        assert!(!col.at_cap);
        assert!((max_entropy_prediction(&c, &col).unwrap() - prediction).abs() < 1e-15);
    }
    let all = class("all");
    let col = colouring_number(&all, 3, 5).unwrap();
    assert!(col.at_cap);
    assert_eq!(max_entropy_prediction(&all, &col).unwrap(), 1.0);
    let k5 = class("kt_free:5");
    let col = colouring_number(&k5, 3, 5).unwrap();
    assert!(col.at_cap);
    assert!(matches!(max_entropy_prediction(&k5, &col), Err(Error::Inconclusive(_))));
}

#[test]
fn growth_series_trend() {
    for name in ["triangle_free", "split"] {
        let s = growth_series(&class(name), 8).unwrap();
        assert!(s.rows.iter().all(|r| r.exponent > 0.5));
        assert!(s.rows[6].exponent < s.rows[2].exponent);
        assert_eq!(s.predicted, Some(0.5));
    }
}

#[test]
fn exact_sampler_is_uniform() {
    let draws = 100_000;
    for (name, n, members) in [("all", 3, 8), ("triangle_free", 3, 7)] {
        let c = class(name);
        let mut freq: HashMap<Graph, u64> = HashMap::new();
        for seed in 0..draws {
            let g = uniform_exact(&c, n, seed).unwrap();
            *freq.entry(g).or_default() += 1;
        }
        assert_eq!(freq.len(), members);
        let p = 1.0 / members as f64;
        let sigma = (p * (1.0 - p) / draws as f64).sqrt();
        for (g, k) in freq {
            assert!(c.contains(&g));
            assert!((k as f64 / draws as f64 - p).abs() <= 4.0 * sigma, "{name}");
        }
    }
    // n = 8 draws a class by orbit size, then relabels; compare the mean
    // edge count with the exact one from the n = 7 oracle extended by scan
    let c = class("triangle_free");
    let (draws, n) = (20_000u64, 8);
    let edges: Vec<f64> = (0..draws)
        .map(|seed| {
            let g = uniform_exact(&c, n, seed).unwrap();
            assert!(c.contains(&g));
            g.edge_count() as f64
        })
        .collect();
    let (mut total, mut weighted, mut squares) = (0u64, 0.0, 0.0);
    for rep in unlabelled_classes(7).unwrap().iter().filter(|r| c.contains(&r.graph)) {
        for nb in 0u64..1 << 7 {
            let mut g = Graph::empty(n);
            for (u, v) in rep.graph.edges() {
                g.add_edge(u, v);
            }
            for u in (0..7).filter(|u| nb >> u & 1 == 1) {
                g.add_edge(u, 7);
            }
            if c.contains(&g) {
                let e = g.edge_count() as f64;
                total += rep.orbit_size;
                weighted += rep.orbit_size as f64 * e;
                squares += rep.orbit_size as f64 * e * e;
            }
        }
    }
    assert_eq!(total, 4_682_270);
    let mean = weighted / total as f64;
    let sd = (squares / total as f64 - mean * mean).sqrt();
    let observed = edges.iter().sum::<f64>() / draws as f64;
    assert!((observed - mean).abs() <= 4.0 * sd / (draws as f64).sqrt(), "{observed} vs {mean}");
    let empty = HereditaryClass::forbidden(vec![Graph::empty(1)]).unwrap();
    assert!(matches!(uniform_exact(&empty, 3, 0), Err(Error::EmptyClass(_))));
}

#[test]
fn mcmc_edge_marginals_for_all_graphs() {
    let (n, runs) = (6, 1000u64);
    let c = class("all");
    let steps = 10 * pairs(n) as u64;
    let mut counts = vec![0u64; pairs(n)];
    for seed in 0..runs {
        let s = uniform_mcmc(&c, n, steps, seed).unwrap();
        assert_eq!(s.steps, steps);
        for (i, (u, v)) in (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).enumerate() {
            counts[i] += s.graph.has_edge(u, v) as u64;
        }
    }
    let sigma = (0.25 / runs as f64).sqrt();
    for k in counts {
        assert!((k as f64 / runs as f64 - 0.5).abs() <= 4.0 * sigma);
    }
}

#[test]
fn mcmc_matches_census_distribution() {
    let (n, steps, samples) = (6, 10_000, 10_000u64);
    let c = class("triangle_free");
    let members: Vec<_> = unlabelled_classes(n).unwrap().iter().filter(|r| c.contains(&r.graph)).cloned().collect();
    let total: u64 = members.iter().map(|r| r.orbit_size).sum();
    let mut freq: HashMap<Graph, u64> = HashMap::new();
    for seed in 0..samples {
        let s = uniform_mcmc(&c, n, steps, seed).unwrap();
        assert!(c.contains(&s.graph));
        *freq.entry(canonical_form(&s.graph)).or_default() += 1;
    }
    let tv: f64 = members
        .iter()
        .map(|r| (r.orbit_size as f64 / total as f64 - *freq.get(&r.graph).unwrap_or(&0) as f64 / samples as f64).abs())
        .sum::<f64>()
        / 2.0;
    assert!(tv <= 0.05, "tv = {tv}");
}
