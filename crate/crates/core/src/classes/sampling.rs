use rand::seq::SliceRandom as _;
use rand::Rng as _;
use serde::Serialize;

use super::census::{members, unlabelled_members, MAX_CENSUS_VERTICES, MAX_LIST_VERTICES};
use super::{ClassKind, HereditaryClass};
use crate::graphs::{graph6, pairs, Graph};
use crate::{rng, Error, Result};

pub const MAX_MCMC_VERTICES: usize = 40;

/// Uniformly random labelled member on `n <= 8` vertices.
pub fn uniform_exact(c: &HereditaryClass, n: usize, seed: u64) -> Result<Graph> {
    if n == 0 || n > MAX_CENSUS_VERTICES {
        return Err(Error::capacity(format!("exact sampling supports 1..={MAX_CENSUS_VERTICES} vertices, got {n}")));
    }
    let mut g = rng::seeded(seed);
    if c.kind == ClassKind::All {
        let mask = g.random_range(0..1u64 << pairs(n));
        return Graph::from_edge_mask(n, mask);
    }
    let empty = || Error::EmptyClass(c.name().to_string());
    if n <= MAX_LIST_VERTICES {
        let list = members(c, n);
        if list.is_empty() {
            return Err(empty());
        }
        return Graph::from_edge_mask(n, list[g.random_range(0..list.len())]);
    }
    // An isomorphism class weighted by orbit size, then a uniform relabelling.
    let classes = unlabelled_members(c, n);
    let total: u64 = classes.iter().map(|r| r.orbit_size).sum();
    if total == 0 {
        return Err(empty());
    }
    let mut x = g.random_range(0..total);
    let class = classes
        .iter()
        .find(|r| {
            if x < r.orbit_size {
                true
            } else {
                x -= r.orbit_size;
                false
            }
        })
        .expect("index below total");
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut g);
    Ok(class.graph.permuted(&perm))
}

/// Output of the single-edge Metropolis chain. Mixing is not certified.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct McmcSample {
    #[serde(serialize_with = "as_graph6")]
    pub graph: Graph,
    pub steps: u64,
    pub accepted: u64,
    pub seed: u64,
    pub quality: &'static str,
}

fn as_graph6<S: serde::Serializer>(g: &Graph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&graph6::encode(g))
}

/// Runs `steps` proposals from the empty graph; each proposal toggles one
/// uniformly chosen pair and is rejected if it leaves the class.
pub fn uniform_mcmc(c: &HereditaryClass, n: usize, steps: u64, seed: u64) -> Result<McmcSample> {
    if n == 0 || n > MAX_MCMC_VERTICES {
        return Err(Error::capacity(format!("MCMC sampling supports 1..={MAX_MCMC_VERTICES} vertices, got {n}")));
    }
    let mut graph = Graph::empty(n);
    if !c.contains(&graph) {
        return Err(Error::EmptyClass(c.name().to_string()));
    }
    let mut g = rng::seeded(seed);
    let mut accepted = 0;
    if n >= 2 {
        for _ in 0..steps {
            let u = g.random_range(0..n);
            let mut v = g.random_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            graph.toggle_edge(u, v);
            if c.contains(&graph) {
                accepted += 1;
            } else {
                graph.toggle_edge(u, v);
            }
        }
    }
    Ok(McmcSample {
        graph,
        steps,
        accepted,
        seed,
        quality: "HEURISTIC",
    })
}
