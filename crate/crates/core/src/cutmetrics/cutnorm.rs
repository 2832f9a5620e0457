use std::sync::atomic::{AtomicBool, Ordering};

use rand::Rng as _;
use rayon::prelude::*;

use super::{witness_value, CutResult, Kernel};
use crate::{rng, Error, Result};

/// Largest block count for the exhaustive subset scan.
pub const MAX_EXACT_BLOCKS: usize = 24;

const CHUNK_BITS: usize = 12;

/// Exact cut norm of a step kernel.
///
/// For a fixed row set `S` the best column set takes every block whose
/// weighted column sum has the chosen sign, so the scan is over the `2^k`
/// row sets only, visited in Gray-code order.
pub fn cut_norm_exact(kern: &Kernel) -> Result<CutResult> {
    let k = kern.k();
    if k > MAX_EXACT_BLOCKS {
        return Err(Error::capacity(format!(
            "exact cut norm supports at most {MAX_EXACT_BLOCKS} blocks, got {k}; use the heuristic"
        )));
    }
    let m = kern.weighted();
    let best = scan(&m, k, f64::INFINITY, k > 14).expect("unbounded scan completes");
    Ok(witness(&m, k, best.rows, true, None))
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct ScanBest {
    pub value: f64,
    pub rows: u64,
}

/// Maximum over row sets; `None` as soon as some row set exceeds `stop_above`.
pub(crate) fn scan(m: &[f64], k: usize, stop_above: f64, parallel: bool) -> Option<ScanBest> {
    let chunk_bits = k.min(CHUNK_BITS);
    let chunks = 1u64 << (k - chunk_bits);
    let abort = AtomicBool::new(false);
    let run = |c: u64| scan_chunk(m, k, c << chunk_bits, 1 << chunk_bits, stop_above, &abort);
    let pick = |a: Option<ScanBest>, b: Option<ScanBest>| match (a, b) {
        (Some(a), Some(b)) => Some(if b.value > a.value || (b.value == a.value && b.rows < a.rows) { b } else { a }),
        _ => None,
    };
    let first = Some(ScanBest { value: 0.0, rows: 0 });
    let best = if parallel {
        (0..chunks).into_par_iter().map(run).reduce(|| first, pick)
    } else {
        (0..chunks).map(run).fold(first, pick)
    };
    if abort.load(Ordering::Relaxed) {
        None
    } else {
        best
    }
}

fn scan_chunk(m: &[f64], k: usize, start: u64, len: u64, stop_above: f64, abort: &AtomicBool) -> Option<ScanBest> {
    let mut s = start ^ (start >> 1);
    let mut col = vec![0.0; k];
    for i in 0..k {
        if s >> i & 1 == 1 {
            for (c, x) in col.iter_mut().zip(&m[i * k..(i + 1) * k]) {
                *c += x;
            }
        }
    }
    let mut best = ScanBest { value: 0.0, rows: 0 };
    for idx in start..start + len {
        if idx > start {
            let bit = idx.trailing_zeros() as usize;
            s ^= 1 << bit;
            let row = &m[bit * k..(bit + 1) * k];
            if s >> bit & 1 == 1 {
                col.iter_mut().zip(row).for_each(|(c, x)| *c += x);
            } else {
                col.iter_mut().zip(row).for_each(|(c, x)| *c -= x);
            }
        }
        let (mut pos, mut neg) = (0.0, 0.0);
        for &c in &col {
            if c > 0.0 {
                pos += c;
            } else {
                neg -= c;
            }
        }
        let v = pos.max(neg);
        if v > best.value || (v == best.value && s < best.rows && v > 0.0) {
            best = ScanBest { value: v, rows: s };
        }
        if v > stop_above {
            abort.store(true, Ordering::Relaxed);
            return None;
        }
        if idx & 0xff == 0 && abort.load(Ordering::Relaxed) {
            return None;
        }
    }
    Some(best)
}

/// Completes a row set to a witness and recomputes its value directly.
fn witness(m: &[f64], k: usize, rows: u64, exact: bool, seed: Option<u64>) -> CutResult {
    let rows: Vec<usize> = (0..k).filter(|&i| rows >> i & 1 == 1).collect();
    let col_sum = |j: usize| rows.iter().map(|&i| m[i * k + j]).sum::<f64>();
    let pos: Vec<usize> = (0..k).filter(|&j| col_sum(j) > 0.0).collect();
    let neg: Vec<usize> = (0..k).filter(|&j| col_sum(j) < 0.0).collect();
    let (vp, vn) = (witness_value(m, k, &rows, &pos), witness_value(m, k, &rows, &neg));
    let (cols, value) = if vp >= vn { (pos, vp) } else { (neg, vn) };
    CutResult {
        value,
        rows,
        cols,
        exact,
        seed,
    }
}

/// Lower bound on the cut norm by alternating optimization of the row and
/// column sets, started from all blocks, from each single block, and from
/// `restarts` random row sets.
pub fn cut_norm_heuristic(kern: &Kernel, restarts: usize, seed: u64) -> CutResult {
    let k = kern.k();
    let m = kern.weighted();
    // deterministic starts: all blocks, then each single block
    let fixed = k as u64 + 1;
    let best = (0..fixed + restarts as u64)
        .into_par_iter()
        .map(|r| {
            let start: Vec<bool> = if r == 0 {
                vec![true; k]
            } else if r < fixed {
                (0..k).map(|i| i as u64 + 1 == r).collect()
            } else {
                let mut g = rng::substream(seed, r);
                (0..k).map(|_| g.random()).collect()
            };
            alternate(&m, k, start)
        })
        .reduce(
            || (0.0, Vec::new(), Vec::new()),
            |a, b| if b.0 > a.0 { b } else { a },
        );
    let (_, rows, cols) = best;
    let value = witness_value(&m, k, &rows, &cols);
    CutResult {
        value,
        rows,
        cols,
        exact: false,
        seed: Some(seed),
    }
}

/// Local search from one row set; returns `(value, rows, cols)`.
pub(crate) fn alternate(m: &[f64], k: usize, mut rows: Vec<bool>) -> (f64, Vec<usize>, Vec<usize>) {
    let mut best = (0.0, Vec::new(), Vec::new());
    for _ in 0..64 {
        let col: Vec<f64> = (0..k)
            .map(|j| (0..k).filter(|&i| rows[i]).map(|i| m[i * k + j]).sum())
            .collect();
        let pos: f64 = col.iter().filter(|c| **c > 0.0).sum();
        let neg: f64 = -col.iter().filter(|c| **c < 0.0).sum::<f64>();
        let sign = if pos >= neg { 1.0 } else { -1.0 };
        let cols: Vec<bool> = col.iter().map(|&c| sign * c > 0.0).collect();
        // best rows for these columns and sign
        let row_sum: Vec<f64> = (0..k)
            .map(|i| (0..k).filter(|&j| cols[j]).map(|j| m[i * k + j]).sum())
            .collect();
        let next: Vec<bool> = row_sum.iter().map(|&r| sign * r > 0.0).collect();
        let value: f64 = row_sum.iter().map(|&r| (sign * r).max(0.0)).sum();
        if value <= best.0 + 1e-15 {
            break;
        }
        best = (
            value,
            (0..k).filter(|&i| next[i]).collect(),
            (0..k).filter(|&j| cols[j]).collect(),
        );
        rows = next;
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphons::Mass;

    fn uniform(values: Vec<Vec<f64>>) -> Kernel {
        let k = values.len();
        Kernel::new(vec![Mass::new(1, k as i64); k], values).unwrap()
    }

    #[test]
    fn examples() {
        let ones = uniform(vec![vec![1.0; 2]; 2]);
        let r = cut_norm_exact(&ones).unwrap();
        assert_eq!((r.value, r.rows.clone(), r.cols.clone()), (1.0, vec![0, 1], vec![0, 1]));
        let checker = uniform(vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
        assert!((cut_norm_exact(&checker).unwrap().value - 0.25).abs() < 1e-15);
        assert!((cut_norm_heuristic(&checker, 4, 1).value - 0.25).abs() < 1e-15);
        let zero = uniform(vec![vec![0.0; 3]; 3]);
        assert_eq!(cut_norm_exact(&zero).unwrap().value, 0.0);
        assert_eq!(cut_norm_heuristic(&zero, 4, 1).value, 0.0);
    }

    #[test]
    fn witness_matches_value() {
        let kern = uniform(vec![
            vec![0.3, -0.7, 0.2],
            vec![-0.7, 0.9, -0.1],
            vec![0.2, -0.1, -0.5],
        ]);
        let r = cut_norm_exact(&kern).unwrap();
        assert!((r.evaluate(&kern) - r.value).abs() < 1e-12);
    }

    #[test]
    fn capacity_limit() {
        let kern = uniform(vec![vec![0.0; 25]; 25]);
        assert!(matches!(cut_norm_exact(&kern), Err(Error::Capacity(_))));
        assert_eq!(cut_norm_heuristic(&kern, 2, 0).value, 0.0);
    }

    #[test]
    fn early_exit() {
        let m = uniform(vec![vec![1.0; 4]; 4]).weighted();
        assert!(scan(&m, 4, 0.5, false).is_none());
        assert_eq!(scan(&m, 4, 1.0, false).unwrap().value, 1.0);
    }
}
