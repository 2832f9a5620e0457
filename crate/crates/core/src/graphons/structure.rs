use super::StepGraphon;

/// Values at or below this are treated as zero (and at or above `1 - ` this
/// as one) when reading off supports.
pub const SUPPORT_EPS: f64 = 1e-15;

/// `∫∫ W`.
pub fn edge_density(w: &StepGraphon) -> f64 {
    w.as_step_function().integral()
}

/// Indicator of `0 < W < 1` on the same blocks.
pub fn randomness_support(w: &StepGraphon) -> StepGraphon {
    StepGraphon::from_step_function(
        w.as_step_function()
            .map_values(|x| (x > SUPPORT_EPS && x < 1.0 - SUPPORT_EPS) as u8 as f64),
    )
}

/// Largest `r` such that `W` gives positive weight to `K_r`; `None` when
/// some diagonal block is supported, since then every clique is.
pub fn support_clique_number(w: &StepGraphon) -> Option<usize> {
    let k = w.k();
    if (0..k).any(|i| w.value(i, i) > SUPPORT_EPS) {
        return None;
    }
    let adj: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && w.value(i, j) > SUPPORT_EPS).collect())
        .collect();
    let mut best = 0;
    let mut clique = Vec::new();
    grow(&adj, &mut clique, (0..k).collect(), &mut best, usize::MAX);
    Some(best)
}

/// Whether `p(K_r; W) = 0`. No graphon is `K_1`-free.
pub fn is_kr_free(w: &StepGraphon, r: usize) -> bool {
    if r < 2 {
        return false;
    }
    let k = w.k();
    if (0..k).any(|i| w.value(i, i) > SUPPORT_EPS) {
        return false;
    }
    let adj: Vec<Vec<bool>> = (0..k)
        .map(|i| (0..k).map(|j| i != j && w.value(i, j) > SUPPORT_EPS).collect())
        .collect();
    let mut best = 0;
    grow(&adj, &mut Vec::new(), (0..k).collect(), &mut best, r);
    best < r
}

/// Branch-and-bound maximum clique; stops once a clique of size `stop` is found.
fn grow(adj: &[Vec<bool>], clique: &mut Vec<usize>, cand: Vec<usize>, best: &mut usize, stop: usize) {
    if clique.len() > *best {
        *best = clique.len();
    }
    if *best >= stop {
        return;
    }
    for (idx, &v) in cand.iter().enumerate() {
        if clique.len() + cand.len() - idx <= *best {
            return;
        }
        let next: Vec<usize> = cand[idx + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
        clique.push(v);
        grow(adj, clique, next, best, stop);
        clique.pop();
        if *best >= stop {
            return;
        }
    }
}
