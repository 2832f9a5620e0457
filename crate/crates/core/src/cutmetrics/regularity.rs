use serde::Serialize;

use super::{cut_norm_exact, cut_norm_heuristic, Kernel, MAX_EXACT_BLOCKS};
use crate::graphons::{equipartition_average, Mass, StepFunction, StepGraphon};
use crate::{rng, Error, Result};

/// Subjects with at most this many blocks search for discrepancy pairs
/// with the exact cut norm.
const EXACT_SEARCH_BLOCKS: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RegularityOptions {
    pub seed: u64,
    pub restarts: usize,
    /// Stop refining once the residual found drops to this value.
    pub target: f64,
}

impl Default for RegularityOptions {
    fn default() -> Self {
        RegularityOptions {
            seed: 0,
            restarts: 8,
            target: 0.0,
        }
    }
}

/// A `k`-part equipartition and how well its stepping approximates the
/// subject in cut norm.
#[derive(Clone, Debug, PartialEq)]
pub struct WeakRegularity {
    pub k: usize,
    /// Number of parts produced by the refinement phase, before rebalancing.
    pub refined_parts: usize,
    /// For each part, the pieces `(source block, mass)` it is made of.
    pub cells: Vec<Vec<(usize, Mass)>>,
    /// The subject averaged over the parts; block `i` is part `i`.
    pub stepped: StepGraphon,
    /// Exact `‖W - E[W|P]‖_□` when `exact`, otherwise a heuristic lower bound.
    pub residual: f64,
    /// Certified upper bound on the residual (exact cut norm or `L¹` norm).
    pub residual_upper: f64,
    pub exact: bool,
    /// `4 / sqrt(log2 k)`.
    pub bound: f64,
}

pub fn weak_regularity(subject: &StepGraphon, k: usize) -> Result<WeakRegularity> {
    weak_regularity_with(subject, k, &RegularityOptions::default())
}

/// Greedy Frieze–Kannan refinement.
///
/// Each round finds a pair `(S, T)` of block sets with large discrepancy in
/// the residual `W - E[W|P]` and splits the current parts by `S` and then by
/// `T`, until `k` parts exist. Parts are then laid out consecutively along
/// `[0, 1]` and cut into `k` equal intervals, splitting blocks where needed.
pub fn weak_regularity_with(subject: &StepGraphon, k: usize, opts: &RegularityOptions) -> Result<WeakRegularity> {
    if k < 2 {
        return Err(Error::domain("weak regularity needs k >= 2"));
    }
    let f = subject.as_step_function();
    let n = f.k();
    let mut parts: Vec<Vec<usize>> = vec![(0..n).collect()];
    let mut round = 0;
    while parts.len() < k {
        let residual = residual_kernel(f, &parts);
        let cut = if n <= EXACT_SEARCH_BLOCKS {
            cut_norm_exact(&residual)?
        } else {
            cut_norm_heuristic(&residual, opts.restarts, rng::mix(opts.seed, round))
        };
        if cut.value <= opts.target.max(1e-12) {
            break;
        }
        let before = parts.len();
        for set in [&cut.rows, &cut.cols] {
            parts = split_parts(parts, set, k);
        }
        if parts.len() == before {
            break;
        }
        round += 1;
    }
    let refined_parts = parts.len();
    let order: Vec<usize> = parts.iter().flatten().copied().collect();
    let laid = f.reorder(&order);
    let stepped = StepGraphon::from_step_function(equipartition_average(&laid, k).clamped());
    let kernel = Kernel::difference(&StepGraphon::from_step_function(laid.clone()), &stepped);
    let (residual, residual_upper, exact) = if kernel.k() <= MAX_EXACT_BLOCKS {
        let v = cut_norm_exact(&kernel)?.value;
        (v, v, true)
    } else {
        let est = cut_norm_heuristic(&kernel, opts.restarts, rng::mix(opts.seed, u64::MAX)).value;
        (est, kernel.l1_norm(), false)
    };
    Ok(WeakRegularity {
        k,
        refined_parts,
        cells: cells(&laid, &order, k),
        stepped,
        residual,
        residual_upper,
        exact,
        bound: 4.0 / (k as f64).log2().sqrt(),
    })
}

fn residual_kernel(f: &StepFunction, parts: &[Vec<usize>]) -> Kernel {
    let mut assignment = vec![0; f.k()];
    for (p, members) in parts.iter().enumerate() {
        for &b in members {
            assignment[b] = p;
        }
    }
    let avg = f.coarsen(&assignment, parts.len());
    let k = f.k();
    let values = (0..k * k)
        .map(|c| {
            let (i, j) = (c / k, c % k);
            f.value(i, j) - avg.value(assignment[i], assignment[j])
        })
        .collect();
    Kernel(StepFunction::from_parts(f.masses().to_vec(), values))
}

/// Replaces each part cut by `set` with its two sides, adjacent, while
/// fewer than `limit` parts exist.
fn split_parts(parts: Vec<Vec<usize>>, set: &[usize], limit: usize) -> Vec<Vec<usize>> {
    let mut count = parts.len();
    let mut out = Vec::with_capacity(parts.len() * 2);
    for part in parts {
        let (inside, outside): (Vec<usize>, Vec<usize>) = part.iter().partition(|b| set.contains(b));
        if count < limit && !inside.is_empty() && !outside.is_empty() {
            out.push(inside);
            out.push(outside);
            count += 1;
        } else {
            out.push(part);
        }
    }
    out
}

fn cells(laid: &StepFunction, order: &[usize], k: usize) -> Vec<Vec<(usize, Mass)>> {
    let cuts: Vec<Mass> = (1..k as i64).map(|j| Mass::new(j, k as i64)).collect();
    let (fine, origin) = laid.split_at(&cuts);
    let mut out = vec![Vec::new(); k];
    let mut left = Mass::new(0, 1);
    for (b, m) in fine.masses().iter().enumerate() {
        let part = (left * Mass::from_integer(k as i64)).floor().to_integer() as usize;
        out[part].push((order[origin[b]], *m));
        left += m;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphons::{entropy, sample};

    #[test]
    fn two_step_subject_is_exact() {
        let t = StepGraphon::turan(2).unwrap();
        let r = weak_regularity(&t, 2).unwrap();
        assert_eq!(r.residual, 0.0);
        assert!(r.exact);
        assert_eq!(r.stepped, t);
        let r4 = weak_regularity(&t, 4).unwrap();
        assert_eq!(r4.residual, 0.0);
    }

    #[test]
    fn cells_cover_equal_masses() {
        let w = StepGraphon::string_a(Mass::new(1, 16)).unwrap();
        let r = weak_regularity(&w, 3).unwrap();
        for part in &r.cells {
            let total: Mass = part.iter().map(|(_, m)| *m).sum();
            assert_eq!(total, Mass::new(1, 3));
        }
        assert!(entropy(&r.stepped) >= entropy(&w) - 1e-12);
    }

    #[test]
    fn random_graph_subject() {
        let g = sample(&StepGraphon::constant(0.5).unwrap(), 64, 11).unwrap();
        let w = StepGraphon::from_graph(&g);
        let r = weak_regularity(&w, 4).unwrap();
        assert!(!r.exact);
        assert!(r.residual <= r.residual_upper);
        assert!(r.residual_upper <= 1.0);
        assert!(r.residual <= r.bound);
        assert_eq!(r.stepped.k(), 4);
    }

    #[test]
    fn rejects_small_k() {
        assert!(weak_regularity(&StepGraphon::turan(2).unwrap(), 1).is_err());
    }
}
