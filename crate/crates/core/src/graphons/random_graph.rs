use rand::Rng as _;
use rayon::prelude::*;

use super::entropy::plogp;
use super::{mass_f64, StepGraphon};
use crate::graphs::{unlabelled_classes, Graph, MAX_VERTICES};
use crate::{rng, Error, Result};

/// Largest pattern accepted by [`p_induced`]; the cost is `k^|h|`.
pub const MAX_PATTERN_VERTICES: usize = 12;

/// `p(h; W) = Pr[G(|h|, W) = h]` for the labelled graph `h`.
pub fn p_induced(h: &Graph, w: &StepGraphon) -> Result<f64> {
    if h.n() > MAX_PATTERN_VERTICES {
        return Err(Error::capacity(format!(
            "p_induced supports patterns with at most {MAX_PATTERN_VERTICES} vertices, got {}",
            h.n()
        )));
    }
    Ok(Evaluator::new(w).p(h))
}

/// Reusable block data for repeated pattern probabilities.
pub(crate) struct Evaluator {
    mu: Vec<f64>,
    k: usize,
    values: Vec<f64>,
}

impl Evaluator {
    pub(crate) fn new(w: &StepGraphon) -> Self {
        Evaluator {
            mu: w.masses().iter().map(mass_f64).collect(),
            k: w.k(),
            values: w.as_step_function().values().to_vec(),
        }
    }

    pub(crate) fn p(&self, h: &Graph) -> f64 {
        let mut blocks = [0usize; MAX_PATTERN_VERTICES];
        self.extend(h, 0, 1.0, &mut blocks)
    }

    fn extend(&self, h: &Graph, u: usize, weight: f64, blocks: &mut [usize; MAX_PATTERN_VERTICES]) -> f64 {
        if u == h.n() {
            return weight;
        }
        let mut total = 0.0;
        for b in 0..self.k {
            let mut wt = weight * self.mu[b];
            let row = &self.values[b * self.k..(b + 1) * self.k];
            for (v, &c) in blocks[..u].iter().enumerate() {
                let x = row[c];
                wt *= if h.has_edge(u, v) { x } else { 1.0 - x };
                if wt == 0.0 {
                    break;
                }
            }
            if wt != 0.0 {
                blocks[u] = b;
                total += self.extend(h, u + 1, wt, blocks);
            }
        }
        total
    }
}

/// Draws `G(n, W)`: block labels from the masses, then independent edges.
pub fn sample(w: &StepGraphon, n: usize, seed: u64) -> Result<Graph> {
    if n == 0 || n > MAX_VERTICES {
        return Err(Error::capacity(format!("sample needs 1..={MAX_VERTICES} vertices, got {n}")));
    }
    let mut rng = rng::seeded(seed);
    Ok(sample_with(w, n, &mut rng))
}

pub(crate) fn sample_with(w: &StepGraphon, n: usize, rng: &mut rng::Rng) -> Graph {
    let mut cumulative = Vec::with_capacity(w.k());
    let mut acc = 0.0;
    for m in w.masses() {
        acc += mass_f64(m);
        cumulative.push(acc);
    }
    let labels: Vec<usize> = (0..n)
        .map(|_| {
            let x: f64 = rng.random();
            cumulative.iter().position(|&c| x < c).unwrap_or(w.k() - 1)
        })
        .collect();
    let mut g = Graph::empty(n);
    for j in 1..n {
        for i in 0..j {
            let y: f64 = rng.random();
            if y < w.value(labels[i], labels[j]) {
                g.add_edge(i, j);
            }
        }
    }
    g
}

/// Shannon entropy (bits) of `G(n, W)` as a distribution on labelled graphs,
/// for `n <= 7`.
pub fn exact_rg_entropy(w: &StepGraphon, n: usize) -> Result<f64> {
    let classes = unlabelled_classes(n)?;
    let eval = Evaluator::new(w);
    // summed in a fixed order so the result does not depend on scheduling
    let terms: Vec<f64> = classes
        .par_iter()
        .map(|c| c.orbit_size as f64 * plogp(eval.p(&c.graph)))
        .collect();
    Ok(terms.iter().sum())
}
