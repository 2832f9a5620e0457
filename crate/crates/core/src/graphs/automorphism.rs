use super::Graph;

/// Number of automorphisms of `g`, by backtracking over degree- and
/// adjacency-consistent vertex maps.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.n();
    let order = search_order(g);
    let mut image = vec![usize::MAX; n];
    extend(g, &order, 0, &mut image, 0)
}

/// Vertices in breadth-first order from the highest-degree vertex of each
/// component, so each placed vertex is constrained by an earlier neighbour.
fn search_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut seen = 0u64;
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let root = (0..n).filter(|&v| seen >> v & 1 == 0).max_by_key(|&v| g.degree(v)).expect("unseen vertex");
        seen |= 1 << root;
        let start = order.len();
        order.push(root);
        let mut i = start;
        while i < order.len() {
            let fresh = g.neighbours(order[i]) & !seen;
            seen |= fresh;
            order.extend((0..n).filter(|&u| fresh >> u & 1 == 1));
            i += 1;
        }
    }
    order
}

fn extend(g: &Graph, order: &[usize], depth: usize, image: &mut [usize], used: u64) -> u64 {
    let Some(&v) = order.get(depth) else {
        return 1;
    };
    let mut total = 0;
    for w in (0..g.n()).filter(|&w| used >> w & 1 == 0 && g.degree(w) == g.degree(v)) {
        let consistent = order[..depth].iter().all(|&u| g.has_edge(u, v) == g.has_edge(image[u], w));
        if consistent {
            image[v] = w;
            total += extend(g, order, depth + 1, image, used | 1 << w);
        }
    }
    image[v] = usize::MAX;
    total
}
