use super::{canonical_form, Graph};

/// True iff no induced subgraph of `g` is isomorphic to a graph in
/// `forbidden`. Patterns larger than `g` cannot occur and are skipped.
///
/// Exhaustive over vertex subsets, so intended for hosts of up to about ten
/// vertices.
pub fn is_free_of(g: &Graph, forbidden: &[Graph]) -> bool {
    let n = g.n();
    for f in forbidden {
        let k = f.n();
        if k > n {
            continue;
        }
        let edges = f.edge_count();
        let canon = canonical_form(f);
        let mut degrees: Vec<u32> = (0..k).map(|v| f.degree(v)).collect();
        degrees.sort_unstable();
        let found = subsets(n, k).any(|subset| {
            let sub = g.induced(subset);
            if sub.edge_count() != edges {
                return false;
            }
            let mut d: Vec<u32> = (0..k).map(|v| sub.degree(v)).collect();
            d.sort_unstable();
            d == degrees && canonical_form(&sub) == canon
        });
        if found {
            return false;
        }
    }
    true
}

/// `k`-element subsets of `0..n` as bitmasks (Gosper's hack).
pub(crate) fn subsets(n: usize, k: usize) -> impl Iterator<Item = u64> {
    let limit: u128 = 1u128 << n;
    let mut next: Option<u64> = if k <= n { Some(((1u128 << k) - 1) as u64) } else { None };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let cur = cur as u128;
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ as u64)
        };
        Some(cur)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k3 = Graph::complete(3);
        assert!(is_free_of(&Graph::cycle(4), &[k3.clone()]));
        assert!(!is_free_of(&Graph::complete(4), &[k3]));
        let two_k2 = Graph::from_edges(4, &[(0, 1), (2, 3)]).unwrap();
        let split_obstructions = [two_k2, Graph::cycle(4), Graph::cycle(5)];
        assert!(!is_free_of(&Graph::cycle(4), &split_obstructions));
        assert!(is_free_of(&Graph::path(3), &[Graph::complete(5)]));
    }

    #[test]
    fn subset_counts() {
        assert_eq!(subsets(5, 2).count(), 10);
        assert_eq!(subsets(6, 0).count(), 1);
        assert_eq!(subsets(6, 6).count(), 1);
        assert_eq!(subsets(3, 4).count(), 0);
        assert_eq!(subsets(64, 1).count(), 64);
        assert!(subsets(7, 3).all(|s| s.count_ones() == 3 && s < 128));
    }
}
