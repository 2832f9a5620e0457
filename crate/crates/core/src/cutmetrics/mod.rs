//! Cut norms, cut distances, weak regularity partitions and the graph counts
//! inside cut-distance balls.
//!
//! Every distance that involves a minimization over rearrangements is an
//! upper bound: it is the exact cut norm of one explicit alignment.

mod balls;
mod cutnorm;
mod distance;
mod regularity;

use std::path::Path;

use serde::Serialize;

use crate::graphons::{StepDocument, StepFunction, StepGraphon};
use crate::{Error, Result};

pub use balls::{count_balls, hat_n_bound, BallCount, MAX_BALL_VERTICES};
pub use cutnorm::{cut_norm_exact, cut_norm_heuristic, MAX_EXACT_BLOCKS};
pub use distance::{
    d_box, d_box_witness, delta_box_upper, delta_box_upper_with, delta_graph_graphon, delta_graph_graphon_with,
    DeltaBound, GraphDistance, SearchOptions, MAX_EXHAUSTIVE_CELLS,
};
pub use regularity::{weak_regularity, weak_regularity_with, RegularityOptions, WeakRegularity};

/// A signed step function with values in `[-1, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Kernel(StepFunction);

impl Kernel {
    pub fn new(masses: Vec<crate::graphons::Mass>, values: Vec<Vec<f64>>) -> Result<Self> {
        StepFunction::new(masses, values, (-1.0, 1.0)).map(Kernel)
    }

    /// `u - v` on the common refinement of the two block structures.
    pub fn difference(u: &StepGraphon, v: &StepGraphon) -> Self {
        let (a, b) = crate::graphons::refine_pair(u.as_step_function(), v.as_step_function());
        let values = a.values().iter().zip(b.values()).map(|(x, y)| x - y).collect();
        Kernel(StepFunction::from_parts(a.masses().to_vec(), values))
    }

    pub fn k(&self) -> usize {
        self.0.k()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.0.value(i, j)
    }

    pub fn as_step_function(&self) -> &StepFunction {
        &self.0
    }

    /// `M[i][j] = μ_i μ_j K(i, j)`, row-major.
    pub(crate) fn weighted(&self) -> Vec<f64> {
        let mu = self.0.masses_f64();
        let k = self.k();
        (0..k * k).map(|c| mu[c / k] * mu[c % k] * self.0.values()[c]).collect()
    }

    /// `∫∫ |K|`, an upper bound on the cut norm.
    pub fn l1_norm(&self) -> f64 {
        self.0.map_values(f64::abs).integral()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: StepDocument = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        doc.to_step_function((-1.0, 1.0)).map(Kernel)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&StepDocument::from_step_function(&self.0)).expect("document serializes")
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }
}

impl From<&StepGraphon> for Kernel {
    fn from(w: &StepGraphon) -> Self {
        Kernel(w.as_step_function().clone())
    }
}

/// A cut-norm value with the block sets attaining it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CutResult {
    pub value: f64,
    /// Row blocks `S`.
    pub rows: Vec<usize>,
    /// Column blocks `T`.
    pub cols: Vec<usize>,
    /// Whether `value` is the certified supremum rather than a lower bound.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl CutResult {
    /// `|Σ_{i∈S, j∈T} μ_i μ_j K(i, j)|` for the stored witness.
    pub fn evaluate(&self, kern: &Kernel) -> f64 {
        witness_value(&kern.weighted(), kern.k(), &self.rows, &self.cols)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("record serializes")
    }
}

pub(crate) fn witness_value(m: &[f64], k: usize, rows: &[usize], cols: &[usize]) -> f64 {
    rows.iter()
        .map(|&i| cols.iter().map(|&j| m[i * k + j]).sum::<f64>())
        .sum::<f64>()
        .abs()
}
