//! Canonical labelling by individualization and refinement.
//!
//! The search tree is built from equitable ordered partitions; the canonical
//! form is the leaf with the lexicographically largest permuted adjacency
//! rows. Branches that are images of an explored sibling under an already
//! discovered automorphism fixing the current prefix are skipped, and a leaf
//! equivalent to the first or best leaf ends its whole subtree.

use smallvec::SmallVec;

use super::Graph;

type Cells = Vec<SmallVec<[usize; 8]>>;

struct Leaf {
    code: Vec<u64>,
    /// `order[pos]` is the vertex placed at `pos`.
    order: Vec<usize>,
    /// Individualized vertices on the path to this leaf.
    path: Vec<usize>,
}

/// Relabelling `v -> lab[v]` that maps `g` onto its canonical form.
pub fn canonical_labelling(g: &Graph) -> Vec<usize> {
    let n = g.n();
    if n == 1 {
        return vec![0];
    }
    let mut search = Search {
        g,
        best: None,
        first: None,
        automorphisms: Vec::new(),
    };
    let root: Cells = vec![(0..n).collect()];
    let mut prefix = Vec::new();
    search.visit(root, &mut prefix);
    let best = search.best.expect("search reaches at least one leaf");
    let mut lab = vec![0; n];
    for (pos, &v) in best.order.iter().enumerate() {
        lab[v] = pos;
    }
    lab
}

/// Canonical representative of the isomorphism class of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    g.permuted(&canonical_labelling(g))
}

struct Search<'a> {
    g: &'a Graph,
    best: Option<Leaf>,
    first: Option<Leaf>,
    automorphisms: Vec<Vec<usize>>,
}

impl Search<'_> {
    /// Returns the depth to jump back to when the subtree just finished is
    /// known to be an automorphic image of an explored one.
    fn visit(&mut self, cells: Cells, prefix: &mut Vec<usize>) -> Option<usize> {
        let cells = refine(self.g, cells);
        let Some(target) = cells.iter().position(|c| c.len() > 1) else {
            let order: Vec<usize> = cells.iter().map(|c| c[0]).collect();
            return self.leaf(order, prefix);
        };
        let depth = prefix.len();
        let members = cells[target].clone();
        let mut explored: SmallVec<[usize; 8]> = SmallVec::new();
        for &v in &members {
            if !explored.is_empty() && self.equivalent_to_explored(prefix, &explored, v) {
                continue;
            }
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend(cells[..target].iter().cloned());
            child.push(SmallVec::from_slice(&[v]));
            child.push(members.iter().copied().filter(|&u| u != v).collect());
            child.extend(cells[target + 1..].iter().cloned());
            prefix.push(v);
            let jump = self.visit(child, prefix);
            prefix.pop();
            explored.push(v);
            if let Some(to) = jump {
                if to < depth {
                    return Some(to);
                }
            }
        }
        None
    }

    fn leaf(&mut self, order: Vec<usize>, path: &[usize]) -> Option<usize> {
        let code = permuted_code(self.g, &order);
        let mut jump = None;
        for reference in [&self.first, &self.best].into_iter().flatten() {
            if reference.code != code {
                continue;
            }
            let mut gamma = vec![0; order.len()];
            for (pos, &v) in reference.order.iter().enumerate() {
                gamma[v] = order[pos];
            }
            if gamma.iter().enumerate().any(|(v, &w)| v != w) && !self.automorphisms.contains(&gamma) {
                self.automorphisms.push(gamma);
            }
            let common = reference.path.iter().zip(path).take_while(|(a, b)| a == b).count();
            jump = Some(jump.map_or(common, |j: usize| j.min(common)));
        }
        let leaf = || Leaf {
            code: code.clone(),
            order: order.clone(),
            path: path.to_vec(),
        };
        if self.first.is_none() {
            self.first = Some(leaf());
        }
        if self.best.as_ref().is_none_or(|b| b.code < code) {
            self.best = Some(leaf());
        }
        jump
    }

    /// Whether `v` lies in the orbit of an explored sibling under the group
    /// generated by the known automorphisms that fix `prefix` pointwise.
    fn equivalent_to_explored(&self, prefix: &[usize], explored: &[usize], v: usize) -> bool {
        let n = self.g.n();
        let mut parent: SmallVec<[usize; 16]> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut any = false;
        for gamma in &self.automorphisms {
            if prefix.iter().any(|&p| gamma[p] != p) {
                continue;
            }
            any = true;
            for (x, &y) in gamma.iter().enumerate() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, y));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let root = find(&mut parent, v);
        explored.iter().any(|&u| find(&mut parent, u) == root)
    }
}

fn permuted_code(g: &Graph, order: &[usize]) -> Vec<u64> {
    order
        .iter()
        .map(|&v| {
            let row = g.neighbours(v);
            let mut code = 0u64;
            for (pos, &u) in order.iter().enumerate() {
                code |= (row >> u & 1) << (63 - pos);
            }
            code
        })
        .collect()
}

/// Refines an ordered partition to the coarsest equitable refinement.
/// Sub-cells are ordered by neighbour count, which keeps the result
/// independent of the vertex labels.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    loop {
        let mut changed = false;
        let mut s = 0;
        while s < cells.len() {
            let splitter: u64 = cells[s].iter().fold(0, |m, &v| m | 1u64 << v);
            let mut next: Cells = Vec::with_capacity(cells.len() + 2);
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: SmallVec<[(u32, usize); 8]> = cell
                    .iter()
                    .map(|&v| ((g.neighbours(v) & splitter).count_ones(), v))
                    .collect();
                keyed.sort_unstable();
                let mut start = 0;
                for i in 1..=keyed.len() {
                    if i == keyed.len() || keyed[i].0 != keyed[start].0 {
                        next.push(keyed[start..i].iter().map(|&(_, v)| v).collect());
                        start = i;
                    }
                }
            }
            if next.len() != cells.len() {
                changed = true;
            }
            cells = next;
            s += 1;
        }
        if !changed {
            return cells;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::enumerate_labelled;
    use std::collections::HashSet;

    #[test]
    fn path_relabelled_two_ways() {
        let a = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let b = Graph::from_edges(3, &[(0, 2), (2, 1)]).unwrap();
        assert_eq!(canonical_form(&a), canonical_form(&b));
    }

    #[test]
    fn triangle_is_fixed() {
        assert_eq!(canonical_form(&Graph::complete(3)), Graph::complete(3));
    }

    #[test]
    fn four_vertex_classes() {
        let forms: HashSet<Graph> = enumerate_labelled(4).unwrap().map(|g| canonical_form(&g)).collect();
        assert_eq!(forms.len(), 11);
    }

    #[test]
    fn symmetric_graphs_finish() {
        for n in [10, 20, 64] {
            assert_eq!(canonical_form(&Graph::empty(n)), Graph::empty(n));
            assert_eq!(canonical_form(&Graph::complete(n)), Graph::complete(n));
        }
        let c = Graph::cycle(12);
        let shifted = c.permuted(&(0..12).map(|v| (v + 5) % 12).collect::<Vec<_>>());
        assert_eq!(canonical_form(&c), canonical_form(&shifted));
        // Petersen graph: vertex-transitive, 120 automorphisms
        let mut p = Graph::empty(10);
        for i in 0..5 {
            p.add_edge(i, (i + 1) % 5);
            p.add_edge(i, i + 5);
            p.add_edge(5 + i, 5 + (i + 2) % 5);
        }
        let q = p.permuted(&[3, 7, 1, 9, 0, 2, 8, 4, 6, 5]);
        assert_eq!(canonical_form(&p), canonical_form(&q));
    }

    #[test]
    fn labelling_is_a_permutation() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4)]).unwrap();
        let mut lab = canonical_labelling(&g);
        lab.sort_unstable();
        assert_eq!(lab, (0..6).collect::<Vec<_>>());
    }
}
