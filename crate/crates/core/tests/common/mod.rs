#![allow(dead_code)]

use graphonlab::cutmetrics::Kernel;
use graphonlab::graphons::{parse_mass, Mass};
use graphonlab::{Graph, StepGraphon};
use proptest::prelude::*;
use rand::Rng;

pub fn mass(p: i64, q: i64) -> Mass {
    parse_mass(&format!("{p}/{q}")).unwrap()
}

/// Masses proportional to the given positive weights.
pub fn masses(weights: &[i64]) -> Vec<Mass> {
    let total: i64 = weights.iter().sum();
    weights.iter().map(|&w| mass(w, total)).collect()
}

pub fn symmetric(k: usize, mut value: impl FnMut(usize, usize) -> f64) -> Vec<Vec<f64>> {
    let mut m = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in i..k {
            let v = value(i, j);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
    m
}

pub fn random_graphon(rng: &mut impl Rng, k: usize) -> StepGraphon {
    let weights: Vec<i64> = (0..k).map(|_| rng.random_range(1..=8)).collect();
    StepGraphon::new(masses(&weights), symmetric(k, |_, _| rng.random::<f64>())).unwrap()
}

pub fn random_equal_graphon(rng: &mut impl Rng, k: usize) -> StepGraphon {
    StepGraphon::new(masses(&vec![1; k]), symmetric(k, |_, _| rng.random::<f64>())).unwrap()
}

pub fn random_kernel(rng: &mut impl Rng, k: usize) -> Kernel {
    let weights: Vec<i64> = (0..k).map(|_| rng.random_range(1..=8)).collect();
    Kernel::new(masses(&weights), symmetric(k, |_, _| rng.random_range(-1.0..=1.0))).unwrap()
}

pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            if rng.random::<f64>() < p {
                g.add_edge(i, j);
            }
        }
    }
    g
}

pub fn seeded(seed: u64) -> graphonlab::rng::Rng {
    graphonlab::rng::seeded(seed)
}

/// Step graphons with `1..=k_max` blocks of random rational masses.
pub fn graphon_strategy(k_max: usize) -> impl Strategy<Value = StepGraphon> {
    (1..=k_max).prop_flat_map(|k| {
        (
            proptest::collection::vec(1i64..=8, k),
            proptest::collection::vec(0.0f64..=1.0, k * k),
        )
            .prop_map(move |(w, v)| StepGraphon::new(masses(&w), symmetric(k, |i, j| v[i * k + j])).unwrap())
    })
}

/// Graphs on `1..=n_max` vertices.
pub fn graph_strategy(n_max: usize) -> impl Strategy<Value = Graph> {
    (1..=n_max).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut g = Graph::empty(n);
            let mut b = bits.into_iter();
            for j in 1..n {
                for i in 0..j {
                    if b.next().unwrap() {
                        g.add_edge(i, j);
                    }
                }
            }
            g
        })
    })
}

pub fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}
