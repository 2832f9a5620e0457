use std::sync::atomic::{AtomicU64, Ordering};

use num_traits::Zero;
use rand::Rng as _;
use rayon::prelude::*;
use serde::Serialize;

use super::cutnorm::{alternate, scan};
use super::{cut_norm_exact, cut_norm_heuristic, CutResult, Kernel, MAX_EXACT_BLOCKS};
use crate::graphons::{equipartition_average, Mass, StepFunction, StepGraphon};
use crate::graphs::Graph;
use crate::{rng, Error, Result};

/// Largest resolution searched over all `m!` cell permutations.
pub const MAX_EXHAUSTIVE_CELLS: usize = 9;

/// Block count up to which search moves are scored by the exact cut norm.
const EXACT_PROXY_BLOCKS: usize = 14;

/// Budget for the rearrangement searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOptions {
    pub seed: u64,
    /// Annealing steps when exhaustive search is out of reach.
    pub iterations: usize,
    /// Restarts of the heuristic cut norm used as a proxy score.
    pub restarts: usize,
    /// Largest number of vertex-to-block assignments enumerated exhaustively.
    pub max_assignments: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            iterations: 4000,
            restarts: 4,
            max_assignments: 50_000,
        }
    }
}

/// `d_□(u, v) = ‖u - v‖_□` at the given alignment.
pub fn d_box(u: &StepGraphon, v: &StepGraphon) -> Result<f64> {
    d_box_witness(u, v).map(|r| r.value)
}

pub fn d_box_witness(u: &StepGraphon, v: &StepGraphon) -> Result<CutResult> {
    cut_norm_exact(&Kernel::difference(u, v))
}

/// Upper bound on the cut distance from rearranging `m` equal cells.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DeltaBound {
    pub m: usize,
    /// `d_□(ū_m, v̄_m ∘ π)`: an upper bound on `δ_□(ū_m, v̄_m)`.
    pub value: f64,
    /// `d_□(u, v ∘ π)` for the same cell permutation, an upper bound on
    /// `δ_□(u, v)`, when the refined kernel is small enough to certify.
    pub original: Option<f64>,
    /// New cell `p` of `v` is old cell `permutation[p]`.
    pub permutation: Vec<usize>,
    pub exhaustive: bool,
    pub bound: &'static str,
}

pub fn delta_box_upper(u: &StepGraphon, v: &StepGraphon, m: usize) -> Result<DeltaBound> {
    delta_box_upper_with(u, v, m, &SearchOptions::default())
}

/// Averages both graphons onto `m` equal cells and minimizes the cut
/// distance over permutations of the cells of `v`: all of them for
/// `m <= 9`, simulated annealing above.
pub fn delta_box_upper_with(u: &StepGraphon, v: &StepGraphon, m: usize, opts: &SearchOptions) -> Result<DeltaBound> {
    if m == 0 {
        return Err(Error::domain("resolution m must be at least 1"));
    }
    if m > MAX_EXACT_BLOCKS {
        return Err(Error::capacity(format!("resolution m is limited to {MAX_EXACT_BLOCKS}, got {m}")));
    }
    let um = equipartition_average(u.as_step_function(), m);
    let vm = equipartition_average(v.as_step_function(), m);
    let w = 1.0 / (m * m) as f64;
    let build = |perm: &[usize]| -> Vec<f64> {
        (0..m * m)
            .map(|c| {
                let (i, j) = (c / m, c % m);
                w * (um.value(i, j) - vm.value(perm[i], perm[j]))
            })
            .collect()
    };
    let exhaustive = m <= MAX_EXHAUSTIVE_CELLS;
    let permutation = if exhaustive {
        let count: u64 = (1..=m as u64).product();
        let identity: Vec<usize> = (0..m).collect();
        let start = scan(&build(&identity), m, f64::INFINITY, false).unwrap().value;
        minimize_indexed(count, start, |idx, bound| {
            let perm = nth_permutation(m, idx);
            scan(&build(&perm), m, bound, false).map(|b| b.value)
        })
        .map_or_else(|| (0..m).collect(), |idx| nth_permutation(m, idx))
    } else {
        let cost = |perm: &[usize]| proxy_cost(&build(perm), m, opts);
        anneal((0..m).collect(), |_| true, cost, opts)
    };
    let value = scan(&build(&permutation), m, f64::INFINITY, m > 14).unwrap().value;
    let rearranged = StepGraphon::from_step_function(permute_cells(v.as_step_function(), m, &permutation));
    let kernel = Kernel::difference(u, &rearranged);
    let original = (kernel.k() <= MAX_EXACT_BLOCKS)
        .then(|| cut_norm_exact(&kernel).map(|r| r.value))
        .transpose()?;
    Ok(DeltaBound {
        m,
        value,
        original,
        permutation,
        exhaustive,
        bound: "upper",
    })
}

/// Cut distance between a graph and a graphon, minimized over the ways of
/// laying out the vertices of `g`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphDistance {
    pub value: f64,
    /// `value` is the exact cut norm of one layout, hence a certified upper
    /// bound on `δ_□(G, W)`.
    pub certified: bool,
    /// Every layout was examined, so `value` is the minimum over layouts.
    pub exhaustive: bool,
    /// `order[p]` is the vertex placed at position `p`.
    pub order: Vec<usize>,
    pub bound: &'static str,
}

pub fn delta_graph_graphon(g: &Graph, w: &StepGraphon) -> Result<GraphDistance> {
    delta_graph_graphon_with(g, w, &SearchOptions::default())
}

/// Positions of `W_G` that lie inside the same block of `w` are
/// interchangeable, so layouts are enumerated as multinomial assignments
/// of vertices to those groups; large inputs fall back to annealing.
pub fn delta_graph_graphon_with(g: &Graph, w: &StepGraphon, opts: &SearchOptions) -> Result<GraphDistance> {
    let layout = Layout::new(g, w);
    let n = g.n();
    let blocks = layout.cells.len();
    let count = layout.assignment_count();
    let exhaustive = blocks <= MAX_EXACT_BLOCKS && count.is_some_and(|c| c <= opts.max_assignments as u128);
    let identity: Vec<usize> = (0..n).collect();
    let order = if exhaustive {
        let orders = layout.all_orders();
        let start = scan(&layout.weighted(&identity), blocks, f64::INFINITY, false).unwrap().value;
        minimize_indexed(orders.len() as u64, start, |idx, bound| {
            scan(&layout.weighted(&orders[idx as usize]), blocks, bound, false).map(|b| b.value)
        })
        .map_or(identity.clone(), |idx| orders[idx as usize].clone())
    } else {
        let group = layout.position_group();
        anneal(
            identity.clone(),
            |(a, b)| group[a] != group[b],
            |order| proxy_cost(&layout.weighted(order), blocks, opts),
            opts,
        )
    };
    let certified = blocks <= MAX_EXACT_BLOCKS;
    let evaluate = |order: &[usize]| -> f64 {
        if certified {
            scan(&layout.weighted(order), blocks, f64::INFINITY, blocks > 14).unwrap().value
        } else {
            cut_norm_heuristic(&layout.kernel(order), opts.restarts, opts.seed).value
        }
    };
    let mut value = evaluate(&order);
    let mut order = order;
    if !exhaustive {
        let base = evaluate(&identity);
        if base < value {
            value = base;
            order = identity;
        }
    }
    Ok(GraphDistance {
        value,
        certified,
        exhaustive,
        order,
        bound: if certified { "upper" } else { "estimate" },
    })
}

/// Refinement of `W_G` against `w`: each cell is a (position, block) overlap.
struct Layout<'a> {
    g: &'a Graph,
    w: &'a StepGraphon,
    /// `(position, block, mass)`.
    cells: Vec<(usize, usize, f64)>,
    /// Block of `w` containing each position, `None` when it straddles.
    inside: Vec<Option<usize>>,
}

impl<'a> Layout<'a> {
    fn new(g: &'a Graph, w: &'a StepGraphon) -> Self {
        let n = g.n() as i64;
        let bounds = w.as_step_function().boundaries();
        let mut cells = Vec::new();
        let mut inside = Vec::new();
        for p in 0..n {
            let (lo, hi) = (Mass::new(p, n), Mass::new(p + 1, n));
            let mut left = Mass::zero();
            let mut hits = Vec::new();
            for (b, &right) in bounds.iter().enumerate() {
                let overlap = right.min(hi) - left.max(lo);
                if overlap > Mass::zero() {
                    hits.push(b);
                    cells.push((p as usize, b, crate::graphons::mass_f64(&overlap)));
                }
                left = right;
            }
            inside.push((hits.len() == 1).then(|| hits[0]));
        }
        Layout { g, w, cells, inside }
    }

    fn masses(&self) -> Vec<Mass> {
        let n = self.g.n() as i64;
        let bounds = self.w.as_step_function().boundaries();
        let mut out = Vec::new();
        for p in 0..n {
            let (lo, hi) = (Mass::new(p, n), Mass::new(p + 1, n));
            let mut left = Mass::zero();
            for &right in &bounds {
                let overlap = right.min(hi) - left.max(lo);
                if overlap > Mass::zero() {
                    out.push(overlap);
                }
                left = right;
            }
        }
        out
    }

    fn kernel(&self, order: &[usize]) -> Kernel {
        let mut values = Vec::with_capacity(self.cells.len() * self.cells.len());
        for &(p, a, _) in &self.cells {
            for &(q, b, _) in &self.cells {
                values.push(self.g.has_edge(order[p], order[q]) as u8 as f64 - self.w.value(a, b));
            }
        }
        Kernel(StepFunction::from_parts(self.masses(), values))
    }

    /// Weighted difference matrix with vertex `order[p]` at position `p`.
    fn weighted(&self, order: &[usize]) -> Vec<f64> {
        let c = self.cells.len();
        let mut m = Vec::with_capacity(c * c);
        for &(p, a, x) in &self.cells {
            for &(q, b, y) in &self.cells {
                let edge = self.g.has_edge(order[p], order[q]) as u8 as f64;
                m.push(x * y * (edge - self.w.value(a, b)));
            }
        }
        m
    }

    /// Group label per position: the containing block, or a private label.
    fn position_group(&self) -> Vec<usize> {
        let k = self.w.k();
        self.inside
            .iter()
            .enumerate()
            .map(|(p, b)| b.unwrap_or(k + p))
            .collect()
    }

    fn groups(&self) -> Vec<Vec<usize>> {
        let labels = self.position_group();
        let mut distinct: Vec<usize> = labels.clone();
        distinct.sort_unstable();
        distinct.dedup();
        distinct
            .iter()
            .map(|&l| (0..labels.len()).filter(|&p| labels[p] == l).collect())
            .collect()
    }

    fn assignment_count(&self) -> Option<u128> {
        let n = self.g.n() as u128;
        let mut count: u128 = 1;
        let mut placed: u128 = 0;
        for group in self.groups() {
            for i in 1..=group.len() as u128 {
                placed += 1;
                count = count.checked_mul(placed)? / i;
            }
        }
        debug_assert_eq!(placed, n);
        Some(count)
    }

    /// One vertex order per multiset assignment, vertices ascending within
    /// each group.
    fn all_orders(&self) -> Vec<Vec<usize>> {
        let groups = self.groups();
        let n = self.g.n();
        let mut out = Vec::new();
        let mut fill = vec![0usize; groups.len()];
        let mut order = vec![0usize; n];
        fn rec(v: usize, n: usize, groups: &[Vec<usize>], fill: &mut [usize], order: &mut [usize], out: &mut Vec<Vec<usize>>) {
            if v == n {
                out.push(order.to_vec());
                return;
            }
            for (gi, group) in groups.iter().enumerate() {
                if fill[gi] < group.len() {
                    order[group[fill[gi]]] = v;
                    fill[gi] += 1;
                    rec(v + 1, n, groups, fill, order, out);
                    fill[gi] -= 1;
                }
            }
        }
        rec(0, n, &groups, &mut fill, &mut order, &mut out);
        out
    }
}

/// Cells of `f` on the `m`-interval grid, rearranged so that new interval
/// `p` carries old interval `perm[p]`.
fn permute_cells(f: &StepFunction, m: usize, perm: &[usize]) -> StepFunction {
    let cuts: Vec<Mass> = (1..m as i64).map(|j| Mass::new(j, m as i64)).collect();
    let (fine, _) = f.split_at(&cuts);
    let mut left = Mass::zero();
    let interval: Vec<usize> = fine
        .masses()
        .iter()
        .map(|x| {
            let i = (left * Mass::from_integer(m as i64)).floor().to_integer() as usize;
            left += x;
            i
        })
        .collect();
    let interval = &interval;
    let order: Vec<usize> = perm
        .iter()
        .flat_map(|&src| (0..fine.k()).filter(move |&b| interval[b] == src))
        .collect();
    fine.reorder(&order)
}

fn proxy_cost(m: &[f64], k: usize, opts: &SearchOptions) -> f64 {
    if k <= EXACT_PROXY_BLOCKS {
        return scan(m, k, f64::INFINITY, false).unwrap().value;
    }
    let mut g = rng::seeded(opts.seed);
    (0..opts.restarts.max(1))
        .map(|r| {
            let start = if r == 0 { vec![true; k] } else { (0..k).map(|_| g.random()).collect() };
            alternate(m, k, start).0
        })
        .fold(0.0, f64::max)
}

/// Smallest-cost index in `0..count`, ties to the lowest index. `eval`
/// receives the best value found so far and may return `None` once its
/// candidate is known to exceed it. Returns `None` if nothing beats `start`.
fn minimize_indexed(count: u64, start: f64, eval: impl Fn(u64, f64) -> Option<f64> + Sync) -> Option<u64> {
    let bound = AtomicU64::new(start.to_bits());
    let best = (0..count as usize)
        .into_par_iter()
        .with_min_len(256)
        .filter_map(|idx| {
            let idx = idx as u64;
            let current = f64::from_bits(bound.load(Ordering::Relaxed));
            let v = eval(idx, current)?;
            bound.fetch_min(v.to_bits(), Ordering::Relaxed);
            Some((v, idx))
        })
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    best.filter(|(v, _)| *v <= start).map(|(_, idx)| idx)
}

fn nth_permutation(m: usize, mut idx: u64) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..m).collect();
    let mut out = Vec::with_capacity(m);
    for i in (0..m).rev() {
        let f: u64 = (1..=i as u64).product();
        let pick = (idx / f) as usize;
        idx %= f;
        out.push(pool.remove(pick));
    }
    out
}

/// Simulated annealing over orderings with transposition moves.
fn anneal(
    start: Vec<usize>,
    allowed: impl Fn((usize, usize)) -> bool,
    cost: impl Fn(&[usize]) -> f64,
    opts: &SearchOptions,
) -> Vec<usize> {
    let len = start.len();
    let mut g = rng::seeded(opts.seed);
    let mut state = start;
    let mut current = cost(&state);
    let mut best = (current, state.clone());
    if len < 2 {
        return state;
    }
    let t0 = 0.05 * current.max(1e-6);
    for step in 0..opts.iterations {
        let temp = t0 * (1e-3f64).powf(step as f64 / opts.iterations.max(1) as f64);
        let (a, b) = (g.random_range(0..len), g.random_range(0..len));
        if a == b || !allowed((a, b)) {
            continue;
        }
        state.swap(a, b);
        let next = cost(&state);
        if next <= current || g.random::<f64>() < ((current - next) / temp).exp() {
            current = next;
            if current < best.0 {
                best = (current, state.clone());
            }
        } else {
            state.swap(a, b);
        }
    }
    best.1
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d_box_examples() {
        let w = StepGraphon::string_a(Mass::new(1, 16)).unwrap();
        assert_eq!(d_box(&w, &w).unwrap(), 0.0);
        let half = StepGraphon::constant(0.5).unwrap();
        let zero = StepGraphon::constant(0.0).unwrap();
        assert_eq!(d_box(&half, &zero).unwrap(), 0.5);
        let t = StepGraphon::turan(2).unwrap();
        // ±1/2 checkerboard: the best box is a single off-diagonal quarter
        assert!((d_box(&t, &half).unwrap() - 0.125).abs() < 1e-15);
    }

    #[test]
    fn delta_examples() {
        let w = StepGraphon::wrs(4, 1).unwrap();
        let p = w.reorder(&[2, 0, 3, 1]).unwrap();
        let d = delta_box_upper(&w, &p, 4).unwrap();
        assert_eq!(d.value, 0.0);
        assert_eq!(d.original, Some(0.0));
        let t = StepGraphon::turan(2).unwrap();
        let r = StepGraphon::wrs(2, 0).unwrap();
        let d = delta_box_upper(&t, &r, 2).unwrap();
        assert!((d.value - 0.25).abs() < 1e-15);
        assert!(d.value <= d_box(&t, &r).unwrap() + 1e-15);
    }

    #[test]
    fn annealing_resolution() {
        let w = StepGraphon::wrs(3, 2).unwrap();
        let d = delta_box_upper(&w, &w, 12).unwrap();
        assert!(!d.exhaustive);
        assert!(d.value < 1e-12);
    }

    #[test]
    fn graph_graphon_examples() {
        let d = delta_graph_graphon(&Graph::complete_bipartite(3, 3), &StepGraphon::turan(2).unwrap()).unwrap();
        assert!(d.value < 1e-15 && d.certified && d.exhaustive);
        // an interleaved labelling of K_{3,3}
        let g = Graph::complete_bipartite(3, 3).permuted(&[0, 2, 4, 1, 3, 5]);
        let d = delta_graph_graphon(&g, &StepGraphon::turan(2).unwrap()).unwrap();
        assert!(d.value < 1e-15);
        // W_{K_n} vanishes on the n diagonal cells of area 1/n²
        for n in 2..=6 {
            let k = delta_graph_graphon(&Graph::complete(n), &StepGraphon::constant(1.0).unwrap()).unwrap();
            assert!((k.value - 1.0 / n as f64).abs() < 1e-15);
        }
    }

    #[test]
    fn graph_graphon_below_identity_alignment() {
        let w = StepGraphon::string_a(Mass::new(1, 8)).unwrap();
        for mask in [0u64, 0b1011_0110, 0x3ff, 0x2a5] {
            let g = Graph::from_edge_mask(5, mask).unwrap();
            let d = delta_graph_graphon(&g, &w).unwrap();
            assert!(d.value <= d_box(&StepGraphon::from_graph(&g), &w).unwrap() + 1e-12);
        }
    }

    #[test]
    fn straddling_positions() {
        let g = Graph::path(3);
        let w = StepGraphon::wrs(2, 0).unwrap();
        let layout = Layout::new(&g, &w);
        assert_eq!(layout.inside, vec![Some(0), None, Some(1)]);
        assert_eq!(layout.cells.len(), 4);
        assert_eq!(layout.assignment_count(), Some(6));
        assert_eq!(layout.all_orders().len(), 6);
        let d = delta_graph_graphon(&g, &w).unwrap();
        assert!(d.exhaustive);
    }

    #[test]
    fn permutation_decoding() {
        let mut all: Vec<Vec<usize>> = (0..24).map(|i| nth_permutation(4, i)).collect();
        assert_eq!(all[0], vec![0, 1, 2, 3]);
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 24);
    }
}
