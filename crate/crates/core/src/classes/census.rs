use std::collections::HashMap;
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use super::{colouring_number, max_entropy_prediction, ClassKind, ColouringNumber, HereditaryClass};
use crate::graphs::{automorphism_count, canonical_form, enumerate_labelled, pairs, Graph, UnlabelledClass};
use crate::{Error, Result};

pub const MAX_CENSUS_VERTICES: usize = 8;
/// Labelled member lists are materialized up to this size; above it only
/// isomorphism classes with orbit sizes are kept.
pub(crate) const MAX_LIST_VERTICES: usize = 7;

/// Sizes of `Q^L_n` and `Q_n`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    pub n: usize,
    pub labelled: u64,
    pub unlabelled: u64,
    /// `log2(labelled) / C(n, 2)`; zero for `n = 1`.
    pub exponent: f64,
}

/// Exact census of a class on `n <= 8` vertices.
///
/// Isomorphism classes of members on `n` vertices are grown from those on
/// `n - 1` vertices by adding vertex `n - 1` with every possible
/// neighbourhood, which reaches every member because the class is
/// hereditary. The labelled count sums the orbit sizes `n! / |Aut(G)|`.
pub fn census(c: &HereditaryClass, n: usize) -> Result<CensusRow> {
    check_n(n)?;
    let classes = unlabelled_members(c, n);
    let labelled = match c.kind {
        ClassKind::All => 1u64 << pairs(n),
        _ => classes.iter().map(|r| r.orbit_size).sum(),
    };
    row(c, n, labelled, classes.len() as u64)
}

/// The same census by scanning every labelled graph, for `n <= 7`.
pub fn census_by_scan(c: &HereditaryClass, n: usize) -> Result<CensusRow> {
    if n > MAX_LIST_VERTICES {
        return Err(Error::capacity(format!("scan census supports up to {MAX_LIST_VERTICES} vertices, got {n}")));
    }
    let mut forms: Vec<Graph> = enumerate_labelled(n)?
        .par_iter()
        .filter(|g| c.contains(g))
        .map(|g| canonical_form(&g))
        .collect();
    let labelled = forms.len() as u64;
    forms.par_sort_unstable();
    forms.dedup();
    row(c, n, labelled, forms.len() as u64)
}

fn row(c: &HereditaryClass, n: usize, labelled: u64, unlabelled: u64) -> Result<CensusRow> {
    if labelled == 0 {
        return Err(Error::EmptyClass(c.name().to_string()));
    }
    let exponent = if n < 2 { 0.0 } else { (labelled as f64).log2() / pairs(n) as f64 };
    Ok(CensusRow {
        n,
        labelled,
        unlabelled,
        exponent,
    })
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_CENSUS_VERTICES {
        return Err(Error::capacity(format!("census supports 1..={MAX_CENSUS_VERTICES} vertices, got {n}")));
    }
    Ok(())
}

/// Census rows for `n = 2..=n_max`, with the colouring-number prediction
/// of the limiting exponent when it is conclusive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthSeries {
    pub class: String,
    pub rows: Vec<CensusRow>,
    pub colouring: Option<ColouringNumber>,
    pub predicted: Option<f64>,
}

pub fn growth_series(c: &HereditaryClass, n_max: usize) -> Result<GrowthSeries> {
    if n_max < 2 {
        return Err(Error::domain(format!("growth series needs n_max >= 2, got {n_max}")));
    }
    check_n(n_max)?;
    let rows = (2..=n_max).map(|n| census(c, n)).collect::<Result<Vec<_>>>()?;
    let colouring = colouring_number(c, 5, 6).ok();
    let predicted = colouring.as_ref().and_then(|col| max_entropy_prediction(c, col).ok());
    Ok(GrowthSeries {
        class: c.name().to_string(),
        rows,
        colouring,
        predicted,
    })
}

pub fn census_csv(rows: &[CensusRow]) -> String {
    let mut out = String::from("n,labelled,unlabelled,exponent\n");
    for r in rows {
        writeln!(out, "{},{},{},{}", r.n, r.labelled, r.unlabelled, r.exponent).unwrap();
    }
    out
}

type Cache<T> = OnceLock<Mutex<HashMap<(String, usize), Arc<T>>>>;

fn cached<T>(cache: &'static Cache<T>, c: &HereditaryClass, n: usize, build: impl FnOnce() -> T) -> Arc<T> {
    let map = cache.get_or_init(Default::default);
    let key = (c.name().to_string(), n);
    if let Some(hit) = map.lock().unwrap().get(&key) {
        return hit.clone();
    }
    let value = Arc::new(build());
    map.lock().unwrap().entry(key).or_insert(value).clone()
}

/// Edge masks of the labelled members on `n <= 7` vertices, ascending.
pub(crate) fn members(c: &HereditaryClass, n: usize) -> Arc<Vec<u64>> {
    static CACHE: Cache<Vec<u64>> = OnceLock::new();
    debug_assert!((1..=MAX_LIST_VERTICES).contains(&n));
    cached(&CACHE, c, n, || {
        if n == 1 {
            return if c.contains(&Graph::empty(1)) { vec![0] } else { Vec::new() };
        }
        let parents = members(c, n - 1);
        let shift = pairs(n - 1);
        // the new neighbourhood occupies the top bits, so iterating it
        // outermost keeps the result sorted
        (0..1u64 << (n - 1))
            .into_par_iter()
            .flat_map_iter(|nb| {
                let parents = parents.clone();
                (0..parents.len()).filter_map(move |i| {
                    let mask = parents[i] | nb << shift;
                    let g = Graph::from_edge_mask(n, mask).expect("mask fits");
                    c.contains_extension(&g).then_some(mask)
                })
            })
            .collect()
    })
}

/// Canonical representatives of the members on `n` vertices with their
/// orbit sizes, sorted.
pub(crate) fn unlabelled_members(c: &HereditaryClass, n: usize) -> Arc<Vec<UnlabelledClass>> {
    static CACHE: Cache<Vec<UnlabelledClass>> = OnceLock::new();
    cached(&CACHE, c, n, || {
        let mut forms: Vec<Graph> = if n == 1 {
            vec![Graph::empty(1)].into_iter().filter(|g| c.contains(g)).collect()
        } else {
            let parents = unlabelled_members(c, n - 1);
            parents
                .par_iter()
                .flat_map_iter(|h| {
                    (0..1u64 << (n - 1)).filter_map(move |nb| {
                        let mut g = Graph::empty(n);
                        for (u, v) in h.graph.edges() {
                            g.add_edge(u, v);
                        }
                        for u in 0..n - 1 {
                            if nb >> u & 1 == 1 {
                                g.add_edge(u, n - 1);
                            }
                        }
                        c.contains_extension(&g).then(|| canonical_form(&g))
                    })
                })
                .collect()
        };
        forms.par_sort_unstable();
        forms.dedup();
        let n_factorial: u64 = (1..=n as u64).product();
        forms
            .into_par_iter()
            .map(|graph| UnlabelledClass {
                orbit_size: n_factorial / automorphism_count(&graph),
                graph,
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn class(name: &str) -> HereditaryClass {
        name.parse().unwrap()
    }

    #[test]
    fn small_counts() {
        assert_eq!(census(&class("kt_free:3"), 3).unwrap().labelled, 7);
        assert_eq!(census(&class("bipartite"), 3).unwrap().labelled, 7);
        assert_eq!(census(&class("all"), 3).unwrap().labelled, 8);
        assert_eq!(census(&class("all"), 4).unwrap().unlabelled, 11);
        assert_eq!(census(&class("all"), 8).unwrap().unlabelled, 12346);
    }

    #[test]
    fn extension_matches_scan() {
        for name in ["kt_free:3", "bipartite", "split", "crs:3,1", "forbidden:Bw,Dhc"] {
            for n in 1..=6 {
                assert_eq!(census(&class(name), n).unwrap(), census_by_scan(&class(name), n).unwrap(), "{name} n={n}");
            }
        }
    }

    #[test]
    fn member_lists_sorted() {
        let m = members(&class("kt_free:3"), 5);
        assert!(m.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn errors() {
        assert!(matches!(census(&class("all"), 9), Err(Error::Capacity(_))));
        assert!(matches!(census(&class("forbidden:@"), 3), Err(Error::EmptyClass(_))));
        assert!(growth_series(&class("all"), 1).is_err());
    }

    #[test]
    fn csv_layout() {
        let rows = vec![census(&class("all"), 2).unwrap()];
        assert_eq!(census_csv(&rows), "n,labelled,unlabelled,exponent\n2,2,2,1\n");
    }
}
