use super::{vertex_mask, Graph};
use crate::{Error, Result};

/// An exact density `count / total`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Density {
    pub count: u128,
    pub total: u128,
}

impl Density {
    pub fn value(&self) -> f64 {
        self.count as f64 / self.total as f64
    }
}

/// Induced density `p(h; g)`: the fraction of injective maps `V(h) -> V(g)`
/// under which `uv` is an edge of `h` exactly when its image is an edge of `g`.
pub fn induced_density(h: &Graph, g: &Graph) -> Result<Density> {
    let (k, n) = (h.n(), g.n());
    if k > n {
        return Err(Error::Size(format!("pattern has {k} vertices but host only {n}")));
    }
    let total = (0..k)
        .try_fold(1u128, |acc, i| acc.checked_mul((n - i) as u128))
        .ok_or_else(|| Error::capacity("embedding count overflows 128 bits"))?;
    let mut image = [0usize; 64];
    let count = count_embeddings(h, g, 0, 0, &mut image);
    Ok(Density { count, total })
}

fn count_embeddings(h: &Graph, g: &Graph, depth: usize, used: u64, image: &mut [usize; 64]) -> u128 {
    let all = vertex_mask(g.n());
    let mut cand = all & !used;
    for w in 0..depth {
        let row = g.neighbours(image[w]);
        cand &= if h.has_edge(depth, w) { row } else { !row };
    }
    if depth + 1 == h.n() {
        return cand.count_ones() as u128;
    }
    let mut total = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        image[depth] = v;
        total += count_embeddings(h, g, depth + 1, used | 1 << v, image);
    }
    total
}

/// Homomorphism density `t(h; g)`: the fraction of all maps `V(h) -> V(g)`
/// that send edges to edges.
pub fn hom_density(h: &Graph, g: &Graph) -> Result<Density> {
    let total = (g.n() as u128)
        .checked_pow(h.n() as u32)
        .ok_or_else(|| Error::capacity("map count overflows 128 bits"))?;
    let mut image = [0usize; 64];
    let count = count_homs(h, g, 0, &mut image);
    Ok(Density { count, total })
}

fn count_homs(h: &Graph, g: &Graph, depth: usize, image: &mut [usize; 64]) -> u128 {
    let mut cand = vertex_mask(g.n());
    for w in 0..depth {
        if h.has_edge(depth, w) {
            cand &= g.neighbours(image[w]);
        }
    }
    if depth + 1 == h.n() {
        return cand.count_ones() as u128;
    }
    let mut total = 0;
    while cand != 0 {
        let v = cand.trailing_zeros() as usize;
        cand &= cand - 1;
        image[depth] = v;
        total += count_homs(h, g, depth + 1, image);
    }
    total
}
