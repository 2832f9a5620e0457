use std::collections::HashMap;
use std::ops::Range;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use super::{canonical_form, pairs, Graph};
use crate::{Error, Result};

/// Largest `n` for which all of `L_n` may be enumerated.
pub const MAX_ENUMERATION_VERTICES: usize = 8;

/// Iterator over the labelled graphs on `[n]` in increasing edge-mask order.
///
/// The index range can be split for data-parallel consumption; every
/// sub-range yields the same graphs as the corresponding slice of the full
/// sequence.
#[derive(Clone, Debug)]
pub struct LabelledGraphs {
    n: usize,
    range: Range<u64>,
}

pub fn enumerate_labelled(n: usize) -> Result<LabelledGraphs> {
    if n == 0 || n > MAX_ENUMERATION_VERTICES {
        return Err(Error::capacity(format!(
            "full enumeration supports 1..={MAX_ENUMERATION_VERTICES} vertices, got {n}"
        )));
    }
    Ok(LabelledGraphs {
        n,
        range: 0..1u64 << pairs(n),
    })
}

impl LabelledGraphs {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Remaining edge-mask range.
    pub fn mask_range(&self) -> Range<u64> {
        self.range.clone()
    }

    /// Splits the remaining range into at most `parts` contiguous pieces.
    pub fn split(&self, parts: usize) -> Vec<LabelledGraphs> {
        let parts = parts.max(1) as u64;
        let len = self.range.end - self.range.start;
        let step = len.div_ceil(parts).max(1);
        let mut out = Vec::new();
        let mut start = self.range.start;
        while start < self.range.end {
            let end = (start + step).min(self.range.end);
            out.push(LabelledGraphs { n: self.n, range: start..end });
            start = end;
        }
        out
    }

    /// Parallel iterator over the remaining graphs.
    pub fn par_iter(&self) -> impl ParallelIterator<Item = Graph> + '_ {
        let n = self.n;
        self.range
            .clone()
            .into_par_iter()
            .map(move |m| Graph::from_edge_mask(n, m).expect("mask in range"))
    }
}

impl Iterator for LabelledGraphs {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        let mask = self.range.next()?;
        Some(Graph::from_edge_mask(self.n, mask).expect("mask in range"))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        self.range.size_hint()
    }
}

impl ExactSizeIterator for LabelledGraphs {}

/// One isomorphism class of `L_n`.
#[derive(Clone, Debug)]
pub struct UnlabelledClass {
    /// Canonical representative.
    pub graph: Graph,
    /// Number of labelled graphs on `[n]` isomorphic to `graph`.
    pub orbit_size: u64,
}

/// All isomorphism classes on `n <= 7` vertices with their orbit sizes,
/// sorted by canonical form. Cached per `n`.
pub fn unlabelled_classes(n: usize) -> Result<Arc<Vec<UnlabelledClass>>> {
    if n == 0 || n > 7 {
        return Err(Error::capacity(format!("unlabelled classes are tabulated for 1..=7 vertices, got {n}")));
    }
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<UnlabelledClass>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&n) {
        return Ok(hit.clone());
    }
    let reps = canonical_reps(n);
    let perms = permutations(n);
    let mut classes: Vec<UnlabelledClass> = reps
        .into_par_iter()
        .map(|graph| {
            let mut images: Vec<u64> = perms
                .iter()
                .map(|p| graph.permuted(p).edge_mask().expect("small graph"))
                .collect();
            images.sort_unstable();
            images.dedup();
            UnlabelledClass {
                graph,
                orbit_size: images.len() as u64,
            }
        })
        .collect();
    classes.sort_by(|a, b| a.graph.cmp(&b.graph));
    let classes = Arc::new(classes);
    cache.lock().unwrap().insert(n, classes.clone());
    Ok(classes)
}

/// Canonical representatives of all graphs on `n` vertices, grown one vertex
/// at a time: every graph on `n` vertices is an extension of a graph on
/// `n - 1` vertices.
fn canonical_reps(n: usize) -> Vec<Graph> {
    let mut reps = vec![Graph::empty(1)];
    for m in 2..=n {
        let mut next: Vec<Graph> = reps
            .par_iter()
            .flat_map_iter(|h| {
                (0..1u64 << (m - 1)).map(move |nb| {
                    let mut g = Graph::empty(m);
                    for (u, v) in h.edges() {
                        g.add_edge(u, v);
                    }
                    for u in 0..m - 1 {
                        if nb >> u & 1 == 1 {
                            g.add_edge(u, m - 1);
                        }
                    }
                    canonical_form(&g)
                })
            })
            .collect();
        next.sort_unstable();
        next.dedup();
        reps = next;
    }
    reps
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            let j = if k.is_multiple_of(2) { i } else { 0 };
            p.swap(j, k - 1);
        }
    }
    heap(n, &mut p, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(enumerate_labelled(1).unwrap().count(), 1);
        assert_eq!(enumerate_labelled(3).unwrap().count(), 8);
        assert_eq!(enumerate_labelled(4).unwrap().len(), 64);
        assert!(matches!(enumerate_labelled(9), Err(Error::Capacity(_))));
        assert!(matches!(enumerate_labelled(0), Err(Error::Capacity(_))));
    }

    #[test]
    fn strictly_increasing_masks() {
        let masks: Vec<u64> = enumerate_labelled(4).unwrap().map(|g| g.edge_mask().unwrap()).collect();
        assert!(masks.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn split_ranges_cover_sequence() {
        let all: Vec<Graph> = enumerate_labelled(4).unwrap().collect();
        let parts = enumerate_labelled(4).unwrap().split(5);
        assert_eq!(parts.len(), 5);
        let joined: Vec<Graph> = parts.into_iter().flatten().collect();
        assert_eq!(all, joined);
        let par: Vec<Graph> = enumerate_labelled(4).unwrap().par_iter().collect();
        assert_eq!(all, par);
    }

    #[test]
    fn unlabelled_counts_match_known_sequence() {
        let known = [1usize, 2, 4, 11, 34, 156, 1044];
        for (i, &k) in known.iter().enumerate() {
            let n = i + 1;
            let classes = unlabelled_classes(n).unwrap();
            assert_eq!(classes.len(), k, "n = {n}");
            let total: u64 = classes.iter().map(|c| c.orbit_size).sum();
            assert_eq!(total, 1u64 << pairs(n));
        }
    }

    #[test]
    fn permutation_count() {
        assert_eq!(permutations(5).len(), 120);
        let mut ps = permutations(4);
        ps.sort();
        ps.dedup();
        assert_eq!(ps.len(), 24);
    }
}
