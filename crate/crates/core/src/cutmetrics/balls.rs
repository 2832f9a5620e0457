use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::{d_box, delta_graph_graphon};
use crate::graphons::{bar_k, clipped_entropy, entropy, StepGraphon};
use crate::graphs::{canonical_form, enumerate_labelled, unlabelled_classes, Graph};
use crate::{Error, Result};

pub const MAX_BALL_VERTICES: usize = 6;

/// Slack absorbing rounding when comparing a distance with `delta`.
const DISTANCE_SLACK: f64 = 1e-12;

/// Labelled graphs on `[n]` within cut distance `delta` of a graphon.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallCount {
    pub n: usize,
    pub delta: f64,
    /// Graphs with `d_□(W_G, W) <= delta`.
    pub n_hat: u64,
    /// Graphs with a vertex layout within `delta` of `W`; a lower bound on
    /// the count under `δ_□` because each layout distance is an upper bound.
    pub n_full: u64,
    pub n_full_is_lower_bound: bool,
    /// Whether every per-graph distance behind `n_full` was certified.
    pub certified: bool,
    pub total: u64,
}

/// Scans all of `L_n`, `n <= 6`. Layout distances are computed once per
/// isomorphism class.
pub fn count_balls(n: usize, delta: f64, w: &StepGraphon) -> Result<BallCount> {
    if n == 0 || n > MAX_BALL_VERTICES {
        return Err(Error::capacity(format!(
            "ball counts scan L_n for 1..={MAX_BALL_VERTICES} vertices, got {n}"
        )));
    }
    if delta.is_nan() || delta < 0.0 {
        return Err(Error::domain(format!("delta must be nonnegative, got {delta}")));
    }
    let classes = unlabelled_classes(n)?;
    let layout: HashMap<Graph, (f64, bool)> = classes
        .par_iter()
        .map(|c| {
            let d = delta_graph_graphon(&c.graph, w)?;
            Ok((c.graph.clone(), (d.value, d.certified)))
        })
        .collect::<Result<_>>()?;
    let certified = layout.values().all(|v| v.1);
    let (n_hat, n_full) = enumerate_labelled(n)?
        .par_iter()
        .map(|g| {
            let hat = d_box(&StepGraphon::from_graph(&g), w)? <= delta + DISTANCE_SLACK;
            let full = hat || layout[&canonical_form(&g)].0 <= delta + DISTANCE_SLACK;
            Ok((hat as u64, full as u64))
        })
        .try_reduce(|| (0, 0), |a, b| Ok((a.0 + b.0, a.1 + b.1)))?;
    debug_assert!(n_hat <= n_full);
    Ok(BallCount {
        n,
        delta,
        n_hat,
        n_full,
        n_full_is_lower_bound: true,
        certified,
        total: 1 << crate::graphs::pairs(n),
    })
}

/// Right-hand side of the counting bound
/// `log2 N̂ / n² <= ½ Ent(W̄_k) + ½ hx(4k²δ) + 2k² log2(n) / n²`.
pub fn hat_n_bound(n: usize, k: usize, delta: f64, w: &StepGraphon) -> Result<f64> {
    let kk = (k * k) as f64;
    let nn = (n * n) as f64;
    Ok(0.5 * entropy(&bar_k(w, k)?) + 0.5 * clipped_entropy(4.0 * kk * delta)? + 2.0 * kk * (n as f64).log2() / nn)
}
