//! Hereditary graph classes.
//!
//! A class is a membership oracle closed under induced subgraphs. Classes
//! are addressed by name: `all`, `bipartite`, `split`, `triangle_free`,
//! `kt_free:t`, `crs:r,s`, `forbidden:@file.g6` or `forbidden:<g6>,<g6>,...`.

mod census;
mod colouring;
mod sampling;

use std::fmt;
use std::str::FromStr;

use crate::graphs::{canonical_form, graph6, Graph};
use crate::{Error, Result};

pub use census::{census, census_by_scan, census_csv, growth_series, CensusRow, GrowthSeries, MAX_CENSUS_VERTICES};
pub use colouring::{colouring_number, max_entropy_prediction, ColouringNumber, MAX_CHECK_VERTICES, MAX_T};
pub use sampling::{uniform_exact, uniform_mcmc, McmcSample, MAX_MCMC_VERTICES};

/// Largest graph accepted by [`crs_member`].
pub const MAX_CRS_VERTICES: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassKind {
    All,
    Bipartite,
    /// Graphs without a `K_t` subgraph.
    KtFree(usize),
    Split,
    /// `C(r, s)`: vertex set splits into `s` cliques and `r - s`
    /// independent sets.
    Crs(usize, usize),
    /// Graphs with no induced copy of any listed graph.
    Forbidden(Vec<Graph>),
}

#[derive(Clone, Debug)]
pub struct HereditaryClass {
    name: String,
    kind: ClassKind,
    patterns: Vec<Pattern>,
}

/// A forbidden induced subgraph with its isomorphism invariants.
#[derive(Clone, Debug)]
struct Pattern {
    canon: Graph,
    edges: usize,
    degrees: Vec<u32>,
}

impl Pattern {
    fn new(f: &Graph) -> Self {
        Pattern {
            canon: canonical_form(f),
            edges: f.edge_count(),
            degrees: sorted_degrees(f),
        }
    }

    fn matches(&self, sub: &Graph) -> bool {
        sub.edge_count() == self.edges && sorted_degrees(sub) == self.degrees && canonical_form(sub) == self.canon
    }
}

fn sorted_degrees(g: &Graph) -> Vec<u32> {
    let mut d: Vec<u32> = (0..g.n()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

impl HereditaryClass {
    pub fn new(kind: ClassKind) -> Result<Self> {
        match kind {
            ClassKind::KtFree(t) if t < 2 => return Err(Error::domain(format!("kt_free needs t >= 2, got {t}"))),
            ClassKind::Crs(r, s) if r == 0 || s > r => {
                return Err(Error::domain(format!("crs needs r >= 1 and 0 <= s <= r, got ({r},{s})")))
            }
            ClassKind::Forbidden(ref list) if list.is_empty() => {
                return Err(Error::domain("forbidden needs at least one graph"))
            }
            _ => {}
        }
        let name = match &kind {
            ClassKind::All => "all".to_string(),
            ClassKind::Bipartite => "bipartite".to_string(),
            ClassKind::KtFree(t) => format!("kt_free:{t}"),
            ClassKind::Split => "split".to_string(),
            ClassKind::Crs(r, s) => format!("crs:{r},{s}"),
            ClassKind::Forbidden(list) => {
                let mut codes: Vec<String> = list.iter().map(|g| graph6::encode(&canonical_form(g))).collect();
                codes.sort();
                codes.dedup();
                format!("forbidden:{}", codes.join(","))
            }
        };
        let patterns = match &kind {
            ClassKind::Forbidden(list) => list.iter().map(Pattern::new).collect(),
            _ => Vec::new(),
        };
        Ok(HereditaryClass { name, kind, patterns })
    }

    pub fn all() -> Self {
        Self::new(ClassKind::All).unwrap()
    }

    pub fn bipartite() -> Self {
        Self::new(ClassKind::Bipartite).unwrap()
    }

    pub fn split() -> Self {
        Self::new(ClassKind::Split).unwrap()
    }

    pub fn kt_free(t: usize) -> Result<Self> {
        Self::new(ClassKind::KtFree(t))
    }

    pub fn crs(r: usize, s: usize) -> Result<Self> {
        Self::new(ClassKind::Crs(r, s))
    }

    pub fn forbidden(list: Vec<Graph>) -> Result<Self> {
        Self::new(ClassKind::Forbidden(list))
    }

    /// Canonical name; equal names denote equal classes.
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &ClassKind {
        &self.kind
    }

    pub fn description(&self) -> String {
        match &self.kind {
            ClassKind::All => "all graphs".into(),
            ClassKind::Bipartite => "bipartite graphs".into(),
            ClassKind::KtFree(t) => format!("graphs with no K_{t}"),
            ClassKind::Split => "split graphs (a clique plus an independent set)".into(),
            ClassKind::Crs(r, s) => format!("graphs partitionable into {s} cliques and {} independent sets", r - s),
            ClassKind::Forbidden(list) => format!("graphs with no induced copy of {} listed graphs", list.len()),
        }
    }

    pub fn contains(&self, g: &Graph) -> bool {
        match &self.kind {
            ClassKind::All => true,
            ClassKind::Bipartite => g.is_bipartite(),
            ClassKind::KtFree(t) => !g.has_clique(*t),
            ClassKind::Split => is_split(g),
            ClassKind::Crs(r, s) => crs_search(g, *r, *s),
            ClassKind::Forbidden(_) => self.free_of_patterns(g, None),
        }
    }

    /// Membership of `g` given that `g - v` is already known to be a
    /// member, where `v = n - 1`.
    pub(crate) fn contains_extension(&self, g: &Graph) -> bool {
        let v = g.n() - 1;
        match &self.kind {
            ClassKind::KtFree(t) => !g.induced(g.neighbours(v)).has_clique(t - 1),
            ClassKind::Forbidden(_) => self.free_of_patterns(g, Some(v)),
            _ => self.contains(g),
        }
    }

    /// Checks induced subgraphs, restricted to those containing `through`.
    fn free_of_patterns(&self, g: &Graph, through: Option<usize>) -> bool {
        let n = g.n();
        self.patterns.iter().all(|p| {
            let k = p.canon.n();
            if k > n {
                return true;
            }
            match through {
                None => !crate::graphs::subsets(n, k).any(|s| p.matches(&g.induced(s))),
                Some(v) => {
                    let others: Vec<usize> = (0..n).filter(|&u| u != v).collect();
                    !crate::graphs::subsets(n - 1, k - 1).any(|s| {
                        let mut mask = 1u64 << v;
                        for (i, &u) in others.iter().enumerate() {
                            if s >> i & 1 == 1 {
                                mask |= 1 << u;
                            }
                        }
                        p.matches(&g.induced(mask))
                    })
                }
            }
        })
    }
}

impl PartialEq for HereditaryClass {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl fmt::Display for HereditaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

impl FromStr for HereditaryClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let ints = || -> Result<Vec<usize>> {
            params
                .split(',')
                .map(|p| {
                    p.trim()
                        .parse()
                        .map_err(|_| Error::domain(format!("`{p}` is not a nonnegative integer in `{s}`")))
                })
                .collect()
        };
        match name {
            "all" => Ok(Self::all()),
            "bipartite" => Ok(Self::bipartite()),
            "split" => Ok(Self::split()),
            "triangle_free" => Self::kt_free(3),
            "kt_free" => match ints()?.as_slice() {
                [t] => Self::kt_free(*t),
                _ => Err(Error::domain("kt_free takes one parameter: kt_free:t")),
            },
            "crs" => match ints()?.as_slice() {
                [r, s] => Self::crs(*r, *s),
                _ => Err(Error::domain("crs takes two parameters: crs:r,s")),
            },
            "forbidden" => {
                // a lone `@` is the graph6 code of the one-vertex graph
                let list = match params.strip_prefix('@').filter(|p| !p.is_empty() && !params.contains(',')) {
                    Some(path) => graph6::read_file(path)?,
                    None => params.split(',').map(|g| graph6::decode(g.trim())).collect::<Result<_>>()?,
                };
                Self::forbidden(list)
            }
            _ => Err(Error::domain(format!(
                "unknown class `{name}` (expected all, bipartite, split, triangle_free, kt_free:t, crs:r,s or forbidden:...)"
            ))),
        }
    }
}

/// Whether the vertices of `g` split into `s` cliques and `r - s`
/// independent sets (parts may be empty).
pub fn crs_member(g: &Graph, r: usize, s: usize) -> Result<bool> {
    if r == 0 || s > r {
        return Err(Error::domain(format!("crs needs r >= 1 and 0 <= s <= r, got ({r},{s})")));
    }
    if g.n() > MAX_CRS_VERTICES {
        return Err(Error::capacity(format!(
            "crs_member supports at most {MAX_CRS_VERTICES} vertices, got {}",
            g.n()
        )));
    }
    Ok(crs_search(g, r, s))
}

/// Backtracking over part assignments. Empty parts of the same kind are
/// interchangeable, so a vertex opens at most one new part of each kind.
pub(crate) fn crs_search(g: &Graph, r: usize, s: usize) -> bool {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut parts = vec![0u64; r];
    fn place(g: &Graph, order: &[usize], idx: usize, parts: &mut [u64], s: usize) -> bool {
        let Some(&v) = order.get(idx) else {
            return true;
        };
        let nb = g.neighbours(v);
        let mut opened_clique = false;
        let mut opened_independent = false;
        for p in 0..parts.len() {
            let members = parts[p];
            let clique = p < s;
            if members == 0 {
                let opened = if clique { &mut opened_clique } else { &mut opened_independent };
                if *opened {
                    continue;
                }
                *opened = true;
            } else if clique && members & !nb != 0 || !clique && members & nb != 0 {
                continue;
            }
            parts[p] |= 1 << v;
            if place(g, order, idx + 1, parts, s) {
                return true;
            }
            parts[p] &= !(1 << v);
        }
        false
    }
    place(g, &order, 0, &mut parts, s)
}

/// Split graphs: by part search for small graphs, by the degree-sequence
/// criterion of Hammer and Simeone above that.
fn is_split(g: &Graph) -> bool {
    if g.n() <= MAX_CRS_VERTICES {
        return crs_search(g, 2, 1);
    }
    let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v) as usize).collect();
    d.sort_unstable_by(|a, b| b.cmp(a));
    let m = (0..d.len()).filter(|&i| d[i] >= i).count();
    let head: usize = d[..m].iter().sum();
    let tail: usize = d[m..].iter().sum();
    head == m * (m - 1) + tail
}
