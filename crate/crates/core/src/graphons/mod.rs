//! Step graphons.
//!
//! A [`StepGraphon`] is constant on the cells `I_i x I_j` of a partition of
//! `[0, 1]` into consecutive intervals with rational lengths. Every graphon
//! built here (graph graphons, Turán graphons, the `R_r` extremal shapes,
//! averages over partitions) is of this form, so all integrals reduce to
//! finite sums.

mod entropy;
mod json;
mod random_graph;
mod step;
mod structure;

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::graphs::{graph6, Graph};
use crate::{Error, Result};

pub use entropy::{binary_entropy, clipped_entropy, entropy};
pub use json::{from_json, to_json, StepDocument, SCHEMA_VERSION};
pub use random_graph::{exact_rg_entropy, p_induced, sample, MAX_PATTERN_VERTICES};
pub use step::{bar_k, common_refine, step, Partition};
pub(crate) use step::{equipartition_average, refine_pair};
pub use structure::{edge_density, is_kr_free, randomness_support, support_clique_number, SUPPORT_EPS};

/// Exact block length.
pub type Mass = Ratio<i64>;

/// Parses `p/q`, an integer, or a finite decimal such as `0.0625` into an
/// exact rational.
pub fn parse_mass(text: &str) -> Result<Mass> {
    let t = text.trim();
    let bad = || Error::domain(format!("`{text}` is not a rational number"));
    if let Some((p, q)) = t.split_once('/') {
        let p: i64 = p.trim().parse().map_err(|_| bad())?;
        let q: i64 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Mass::new(p, q));
    }
    let (int, frac) = t.split_once('.').unwrap_or((t, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let negative = int.starts_with('-');
    let int_val: i64 = match int.trim_start_matches(['-', '+']) {
        "" if !frac.is_empty() => 0,
        s => s.parse().map_err(|_| bad())?,
    };
    let denom = 10i64.pow(frac.len() as u32);
    let frac_val: i64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
    let num = int_val
        .checked_mul(denom)
        .and_then(|v| v.checked_add(frac_val))
        .ok_or_else(bad)?;
    Ok(Mass::new(if negative { -num } else { num }, denom))
}

pub(crate) fn mass_f64(m: &Mass) -> f64 {
    m.to_f64().expect("rational converts to f64")
}

/// Block masses plus a symmetric value matrix; shared by graphons and the
/// signed kernels used for cut norms.
#[derive(Clone, Debug, PartialEq)]
pub struct StepFunction {
    masses: Vec<Mass>,
    /// Row-major `k x k`.
    values: Vec<f64>,
}

impl StepFunction {
    /// Checks masses (positive, summing to one) and symmetry; values must
    /// lie in `range`.
    pub fn new(masses: Vec<Mass>, values: Vec<Vec<f64>>, range: (f64, f64)) -> Result<Self> {
        let k = masses.len();
        if k == 0 {
            return Err(Error::domain("a step function needs at least one block"));
        }
        if let Some(m) = masses.iter().find(|m| !m.is_positive()) {
            return Err(Error::domain(format!("block mass {m} is not positive")));
        }
        let total: Mass = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::domain(format!("block masses sum to {total}, not 1")));
        }
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::domain(format!("value matrix must be {k} x {k}")));
        }
        for i in 0..k {
            for j in 0..k {
                let v = values[i][j];
                if !(range.0..=range.1).contains(&v) {
                    return Err(Error::domain(format!(
                        "value {v} at ({i},{j}) outside [{}, {}]",
                        range.0, range.1
                    )));
                }
                if v != values[j][i] {
                    return Err(Error::domain(format!("values are not symmetric at ({i},{j})")));
                }
            }
        }
        Ok(StepFunction {
            masses,
            values: values.into_iter().flatten().collect(),
        })
    }

    pub(crate) fn from_parts(masses: Vec<Mass>, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), masses.len() * masses.len());
        StepFunction { masses, values }
    }

    /// `k` equal blocks with `value(i, j)`.
    pub(crate) fn uniform(k: usize, value: impl Fn(usize, usize) -> f64) -> Self {
        let masses = vec![Mass::new(1, k as i64); k];
        let values = (0..k * k).map(|c| value(c / k, c % k)).collect();
        StepFunction { masses, values }
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[Mass] {
        &self.masses
    }

    pub fn masses_f64(&self) -> Vec<f64> {
        self.masses.iter().map(mass_f64).collect()
    }

    #[inline]
    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.k() + j]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.values.chunks(self.k()).map(<[f64]>::to_vec).collect()
    }

    /// `∫∫ f`.
    pub fn integral(&self) -> f64 {
        let mu = self.masses_f64();
        let k = self.k();
        let mut total = 0.0;
        for i in 0..k {
            for j in 0..k {
                total += mu[i] * mu[j] * self.value(i, j);
            }
        }
        total
    }

    /// Right endpoints of the blocks.
    pub fn boundaries(&self) -> Vec<Mass> {
        let mut acc = Mass::zero();
        self.masses
            .iter()
            .map(|m| {
                acc += m;
                acc
            })
            .collect()
    }

    /// Splits blocks at every cut point that falls strictly inside one.
    /// Returns the refined function and, per new block, its source block.
    pub fn split_at(&self, cuts: &[Mass]) -> (StepFunction, Vec<usize>) {
        let mut origin = Vec::with_capacity(self.k() + cuts.len());
        let mut masses = Vec::with_capacity(self.k() + cuts.len());
        let mut sorted: Vec<Mass> = cuts.to_vec();
        sorted.sort();
        sorted.dedup();
        let mut left = Mass::zero();
        let mut c = 0;
        for (b, m) in self.masses.iter().enumerate() {
            let right = left + m;
            let mut start = left;
            while c < sorted.len() && sorted[c] <= left {
                c += 1;
            }
            while c < sorted.len() && sorted[c] < right {
                masses.push(sorted[c] - start);
                origin.push(b);
                start = sorted[c];
                c += 1;
            }
            masses.push(right - start);
            origin.push(b);
            left = right;
        }
        let k = masses.len();
        let values = (0..k * k)
            .map(|cell| self.value(origin[cell / k], origin[cell % k]))
            .collect();
        (StepFunction { masses, values }, origin)
    }

    /// Averages over the groups of `assignment` (block -> group).
    pub fn coarsen(&self, assignment: &[usize], groups: usize) -> StepFunction {
        let k = self.k();
        let mu = self.masses_f64();
        let mut masses = vec![Mass::zero(); groups];
        for (b, &g) in assignment.iter().enumerate() {
            masses[g] += self.masses[b];
        }
        let mut sums = vec![0.0; groups * groups];
        for i in 0..k {
            for j in 0..k {
                sums[assignment[i] * groups + assignment[j]] += mu[i] * mu[j] * self.value(i, j);
            }
        }
        let gm: Vec<f64> = masses.iter().map(mass_f64).collect();
        let mut values = vec![0.0; groups * groups];
        for a in 0..groups {
            for b in a..groups {
                let v = sums[a * groups + b] / (gm[a] * gm[b]);
                values[a * groups + b] = v;
                values[b * groups + a] = v;
            }
        }
        StepFunction { masses, values }
    }

    /// Reorders blocks: new block `p` is old block `order[p]`.
    pub fn reorder(&self, order: &[usize]) -> StepFunction {
        let k = self.k();
        let masses = order.iter().map(|&b| self.masses[b]).collect();
        let values = (0..k * k)
            .map(|c| self.value(order[c / k], order[c % k]))
            .collect();
        StepFunction { masses, values }
    }

    pub fn map_values(&self, f: impl Fn(f64) -> f64) -> StepFunction {
        StepFunction {
            masses: self.masses.clone(),
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }
}

/// A step graphon: a [`StepFunction`] with values in `[0, 1]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StepGraphon(StepFunction);

impl StepGraphon {
    pub fn new(masses: Vec<Mass>, values: Vec<Vec<f64>>) -> Result<Self> {
        StepFunction::new(masses, values, (0.0, 1.0)).map(StepGraphon)
    }

    pub(crate) fn from_step_function(f: StepFunction) -> Self {
        debug_assert!(f.values.iter().all(|v| (0.0..=1.0).contains(v)));
        StepGraphon(f)
    }

    /// Constant graphon `p`.
    pub fn constant(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::domain(format!("constant {p} outside [0, 1]")));
        }
        Ok(StepGraphon(StepFunction::uniform(1, |_, _| p)))
    }

    /// `W_G`: `n` equal blocks carrying the adjacency matrix.
    pub fn from_graph(g: &Graph) -> Self {
        StepGraphon(StepFunction::uniform(g.n(), |i, j| g.has_edge(i, j) as u8 as f64))
    }

    /// Turán graphon `W_{K_r}`: `r` equal blocks, 1 off the diagonal.
    pub fn turan(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::domain("turan(r) needs r >= 1"));
        }
        Ok(StepGraphon(StepFunction::uniform(r, |i, j| (i != j) as u8 as f64)))
    }

    /// `W^(r,s)`: 1/2 off the diagonal on `r` equal blocks; diagonal block
    /// `i` is 1 for `i < s` and 0 otherwise.
    pub fn wrs(r: usize, s: usize) -> Result<Self> {
        if r == 0 || s > r {
            return Err(Error::domain(format!("wrs({r},{s}) needs r >= 1 and 0 <= s <= r")));
        }
        Ok(StepGraphon(StepFunction::uniform(r, |i, j| {
            if i != j {
                0.5
            } else if i < s {
                1.0
            } else {
                0.0
            }
        })))
    }

    /// The string-graph family `W_a`, `0 <= a <= 1/8`: `W^(4,4)` with its
    /// first block split into lengths `a` and `1/4 - a` and the value
    /// between the two parts set to 0. At `a = 0` this is `W^(4,4)`.
    pub fn string_a(a: Mass) -> Result<Self> {
        if a.is_negative() || a > Mass::new(1, 8) {
            return Err(Error::domain(format!("string_a needs 0 <= a <= 1/8, got {a}")));
        }
        if a.is_zero() {
            return Self::wrs(4, 4);
        }
        let quarter = Mass::new(1, 4);
        let masses = vec![a, quarter - a, quarter, quarter, quarter];
        // part of each block in the 4-block picture
        let part = [0, 0, 1, 2, 3];
        let values = (0..5)
            .map(|i| {
                (0..5)
                    .map(|j| match (i, j) {
                        (0, 1) | (1, 0) => 0.0,
                        _ if part[i] == part[j] => 1.0,
                        _ => 0.5,
                    })
                    .collect()
            })
            .collect();
        Self::new(masses, values)
    }

    pub fn make(ctor: &Constructor) -> Result<Self> {
        match ctor {
            Constructor::Constant(p) => Self::constant(*p),
            Constructor::FromGraph(g) => Ok(Self::from_graph(g)),
            Constructor::Turan(r) => Self::turan(*r),
            Constructor::Wrs(r, s) => Self::wrs(*r, *s),
            Constructor::StringA(a) => Self::string_a(*a),
        }
    }

    pub fn k(&self) -> usize {
        self.0.k()
    }

    pub fn masses(&self) -> &[Mass] {
        self.0.masses()
    }

    pub fn value(&self, i: usize, j: usize) -> f64 {
        self.0.value(i, j)
    }

    pub fn as_step_function(&self) -> &StepFunction {
        &self.0
    }

    /// Applies a block permutation: new block `p` is old block `order[p]`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.k()];
        if order.len() != self.k() || order.iter().any(|&b| b >= self.k() || std::mem::replace(&mut seen[b], true)) {
            return Err(Error::domain("block order must be a permutation"));
        }
        Ok(StepGraphon(self.0.reorder(order)))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        from_json(&text)
    }
}

/// Named graphon constructors, also used for the `name:params` literal
/// grammar of the command line.
#[derive(Clone, Debug, PartialEq)]
pub enum Constructor {
    Constant(f64),
    FromGraph(Graph),
    Turan(usize),
    Wrs(usize, usize),
    StringA(Mass),
}

impl FromStr for Constructor {
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
            "constant" => params
                .trim()
                .parse()
                .map(Constructor::Constant)
                .map_err(|_| Error::domain(format!("constant needs a number, got `{params}`"))),
            "graph" => graph6::decode(params.trim()).map(Constructor::FromGraph),
            "turan" => match ints()?.as_slice() {
                [r] => Ok(Constructor::Turan(*r)),
                _ => Err(Error::domain("turan takes one parameter: turan:r")),
            },
            "wrs" => match ints()?.as_slice() {
                [r, s] => Ok(Constructor::Wrs(*r, *s)),
                _ => Err(Error::domain("wrs takes two parameters: wrs:r,s")),
            },
            "string" => parse_mass(params).map(Constructor::StringA),
            _ => Err(Error::domain(format!(
                "unknown graphon `{name}` (expected constant, graph, turan, wrs, string or @file.json)"
            ))),
        }
    }
}

impl fmt::Display for Constructor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constructor::Constant(p) => write!(f, "constant:{p}"),
            Constructor::FromGraph(g) => write!(f, "graph:{}", graph6::encode(g)),
            Constructor::Turan(r) => write!(f, "turan:{r}"),
            Constructor::Wrs(r, s) => write!(f, "wrs:{r},{s}"),
            Constructor::StringA(a) => write!(f, "string:{a}"),
        }
    }
}

/// Resolves a graphon literal: a constructor or `@path.json`.
pub fn parse_graphon(literal: &str) -> Result<StepGraphon> {
    match literal.strip_prefix('@') {
        Some(path) => StepGraphon::load(path),
        None => StepGraphon::make(&literal.parse()?),
    }
}
