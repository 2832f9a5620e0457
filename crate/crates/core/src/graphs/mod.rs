//! Labelled simple graphs on at most 64 vertices.
//!
//! Each adjacency row is one machine word. Edges are numbered in graph6
//! order, so the pair `i < j` has index `j * (j - 1) / 2 + i`; graphs with at
//! most 11 vertices round-trip through a single `u64` edge mask in that order.

mod automorphism;
mod canon;
mod density;
mod enumerate;
mod freeness;
pub mod graph6;

use std::fmt;

use smallvec::SmallVec;

use crate::{Error, Result};

pub use automorphism::automorphism_count;
pub use canon::{canonical_form, canonical_labelling};
pub use density::{hom_density, induced_density, Density};
pub use enumerate::{enumerate_labelled, unlabelled_classes, LabelledGraphs, UnlabelledClass};
pub use freeness::is_free_of;
pub(crate) use freeness::subsets;

pub const MAX_VERTICES: usize = 64;
/// Largest vertex count whose edge set fits in one `u64` mask.
pub const MAX_MASK_VERTICES: usize = 11;

/// Number of unordered pairs on `n` vertices.
pub const fn pairs(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Position of the pair `{i, j}` in graph6 edge order.
#[inline]
pub const fn pair_index(i: usize, j: usize) -> usize {
    let (lo, hi) = if i < j { (i, j) } else { (j, i) };
    hi * (hi - 1) / 2 + lo
}

#[inline]
pub(crate) const fn vertex_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    rows: SmallVec<[u64; 8]>,
}

impl Graph {
    /// Edgeless graph on `n` vertices, `1 <= n <= 64`.
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::capacity(format!(
                "graphs have 1..={MAX_VERTICES} vertices, got {n}"
            )));
        }
        Ok(Graph {
            n,
            rows: SmallVec::from_elem(0, n),
        })
    }

    /// # Panics
    /// If `n` is outside `1..=64`.
    pub fn empty(n: usize) -> Self {
        Self::new(n).expect("vertex count out of range")
    }

    /// # Panics
    /// If `n` is outside `1..=64`.
    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        let all = vertex_mask(n);
        for v in 0..n {
            g.rows[v] = all & !(1u64 << v);
        }
        g
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let mut g = Self::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let mut g = Self::path(n);
        g.add_edge(0, n - 1);
        g
    }

    /// Complete bipartite graph with sides `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut g = Self::empty(a + b);
        for i in 0..a {
            for j in a..a + b {
                g.add_edge(i, j);
            }
        }
        g
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::new(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n || u == v {
                return Err(Error::domain(format!("invalid edge {u}-{v} on {n} vertices")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Builds a graph from a graph6-ordered edge mask.
    pub fn from_edge_mask(n: usize, mask: u64) -> Result<Self> {
        if n > MAX_MASK_VERTICES {
            return Err(Error::capacity(format!(
                "edge masks hold at most {MAX_MASK_VERTICES} vertices, got {n}"
            )));
        }
        let mut g = Self::new(n)?;
        if pairs(n) < 64 && mask >> pairs(n) != 0 {
            return Err(Error::domain(format!("edge mask {mask:#x} has bits beyond {n} vertices")));
        }
        let mut bit = 0;
        for j in 1..n {
            for i in 0..j {
                if mask >> bit & 1 == 1 {
                    g.add_edge(i, j);
                }
                bit += 1;
            }
        }
        Ok(g)
    }

    /// The graph6-ordered edge mask, if the graph is small enough.
    pub fn edge_mask(&self) -> Option<u64> {
        if self.n > MAX_MASK_VERTICES {
            return None;
        }
        let mut mask = 0u64;
        let mut bit = 0;
        for j in 1..self.n {
            for i in 0..j {
                mask |= ((self.rows[j] >> i) & 1) << bit;
                bit += 1;
            }
        }
        Some(mask)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Neighbourhood of `v` as a bitset.
    #[inline]
    pub fn neighbours(&self, v: usize) -> u64 {
        self.rows[v]
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n && v < self.n);
        self.rows[u] |= 1 << v;
        self.rows[v] |= 1 << u;
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        self.rows[u] &= !(1 << v);
        self.rows[v] &= !(1 << u);
    }

    pub fn toggle_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v);
        self.rows[u] ^= 1 << v;
        self.rows[v] ^= 1 << u;
    }

    pub fn degree(&self, v: usize) -> u32 {
        self.rows[v].count_ones()
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(i, j)` with `i < j`, in graph6 order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..self.n).flat_map(move |j| (0..j).filter(move |&i| self.has_edge(i, j)).map(move |i| (i, j)))
    }

    pub fn complement(&self) -> Self {
        let all = vertex_mask(self.n);
        let mut g = self.clone();
        for v in 0..self.n {
            g.rows[v] = all & !self.rows[v] & !(1u64 << v);
        }
        g
    }

    /// Subgraph induced by the vertices in `subset`, relabelled in increasing order.
    pub fn induced(&self, subset: u64) -> Self {
        let verts: SmallVec<[usize; 16]> = (0..self.n).filter(|&v| subset >> v & 1 == 1).collect();
        let mut g = Self::empty(verts.len().max(1));
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(a, b);
                }
            }
        }
        g
    }

    /// Deletes vertex `v`.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        if self.n == 1 {
            return Err(Error::Size("cannot delete the only vertex".into()));
        }
        Ok(self.induced(vertex_mask(self.n) & !(1u64 << v)))
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Self::empty(self.n);
        for (u, v) in self.edges() {
            g.add_edge(perm[u], perm[v]);
        }
        g
    }

    /// Proper 2-colouring by breadth-first search.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = [u8::MAX; MAX_VERTICES];
        let mut queue = [0usize; MAX_VERTICES];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let (mut head, mut tail) = (0, 1);
            queue[0] = s;
            while head < tail {
                let u = queue[head];
                head += 1;
                let mut nb = self.rows[u];
                while nb != 0 {
                    let v = nb.trailing_zeros() as usize;
                    nb &= nb - 1;
                    if colour[v] == u8::MAX {
                        colour[v] = colour[u] ^ 1;
                        queue[tail] = v;
                        tail += 1;
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Size of a largest clique (bitset branch and bound).
    pub fn clique_number(&self) -> usize {
        fn expand(rows: &[u64], cand: u64, size: usize, best: &mut usize) {
            if cand == 0 {
                *best = (*best).max(size);
                return;
            }
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let mut c = cand;
            while c != 0 {
                if size + c.count_ones() as usize <= *best {
                    return;
                }
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                expand(rows, c & rows[v], size + 1, best);
            }
        }
        let mut best = 0;
        expand(&self.rows, vertex_mask(self.n), 0, &mut best);
        best
    }

    /// True if the graph has a clique on `t` vertices.
    pub fn has_clique(&self, t: usize) -> bool {
        fn search(rows: &[u64], cand: u64, need: usize) -> bool {
            if need == 0 {
                return true;
            }
            let mut c = cand;
            while c != 0 {
                if (c.count_ones() as usize) < need {
                    return false;
                }
                let v = c.trailing_zeros() as usize;
                c &= c - 1;
                if search(rows, c & rows[v], need - 1) {
                    return true;
                }
            }
            false
        }
        search(&self.rows, vertex_mask(self.n), t)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({}, {:?})", self.n, self.edges().collect::<Vec<_>>())
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&graph6::encode(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_mask_round_trip() {
        let g = Graph::cycle(5);
        let mask = g.edge_mask().unwrap();
        assert_eq!(Graph::from_edge_mask(5, mask).unwrap(), g);
        assert_eq!(mask.count_ones(), 5);
        // pair (0,1) is bit 0, pair (1,2) is bit 2
        assert_eq!(Graph::from_edge_mask(3, 0b101).unwrap(), Graph::path(3));
    }

    #[test]
    fn bounds_are_enforced() {
        assert!(matches!(Graph::new(0), Err(Error::Capacity(_))));
        assert!(matches!(Graph::new(65), Err(Error::Capacity(_))));
        assert!(Graph::new(64).is_ok());
        assert!(Graph::from_edge_mask(3, 0b1000).is_err());
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
    }

    #[test]
    fn complete_graph_on_64_vertices() {
        let g = Graph::complete(64);
        assert_eq!(g.edge_count(), pairs(64));
        assert!(!g.has_edge(5, 5));
        assert_eq!(g.clique_number(), 64);
    }

    #[test]
    fn cliques_and_bipartiteness() {
        assert!(Graph::cycle(4).is_bipartite());
        assert!(!Graph::cycle(5).is_bipartite());
        assert_eq!(Graph::cycle(5).clique_number(), 2);
        assert!(Graph::complete(4).has_clique(4));
        assert!(!Graph::complete(4).has_clique(5));
        assert!(Graph::empty(3).has_clique(1));
    }

    #[test]
    fn induced_and_delete() {
        let g = Graph::cycle(5);
        assert_eq!(g.induced(0b00111), Graph::path(3));
        assert_eq!(g.delete_vertex(4).unwrap(), Graph::path(4));
        assert_eq!(g.complement().edge_count(), 5);
    }
}
