use rayon::prelude::*;
use serde::Serialize;

use super::{crs_search, ClassKind, HereditaryClass};
use crate::graphs::unlabelled_classes;
use crate::{Error, Result};

pub const MAX_T: usize = 5;
pub const MAX_CHECK_VERTICES: usize = 7;

/// Finite-size estimate of the colouring number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColouringNumber {
    /// Largest `t <= t_max` with `C(t, u) ⊆ Q` on `n_check` vertices for
    /// some `u`; zero if there is none.
    pub r_hat: usize,
    /// Smallest such `u` for `t = r_hat`.
    pub s_witness: Option<usize>,
    /// `t_max` itself passed, so the true value may be larger.
    pub at_cap: bool,
    pub t_max: usize,
    pub n_check: usize,
    /// Every `(t, u)` whose containment held.
    pub contained: Vec<(usize, usize)>,
}

/// Tests `C(t, u) ⊆ Q` for `1 <= t <= t_max`, `0 <= u <= t` on all
/// isomorphism classes with `n_check` vertices.
pub fn colouring_number(c: &HereditaryClass, t_max: usize, n_check: usize) -> Result<ColouringNumber> {
    if t_max == 0 || t_max > MAX_T {
        return Err(Error::capacity(format!("t_max must be in 1..={MAX_T}, got {t_max}")));
    }
    if n_check == 0 || n_check > MAX_CHECK_VERTICES {
        return Err(Error::capacity(format!("n_check must be in 1..={MAX_CHECK_VERTICES}, got {n_check}")));
    }
    let reps = unlabelled_classes(n_check)?;
    let outside: Vec<_> = reps.par_iter().filter(|r| !c.contains(&r.graph)).map(|r| &r.graph).collect();
    let pairs: Vec<(usize, usize)> = (1..=t_max).flat_map(|t| (0..=t).map(move |u| (t, u))).collect();
    let contained: Vec<(usize, usize)> = pairs
        .into_par_iter()
        .filter(|&(t, u)| outside.iter().all(|g| !crs_search(g, t, u)))
        .collect();
    let r_hat = contained.iter().map(|p| p.0).max().unwrap_or(0);
    let s_witness = contained.iter().filter(|p| p.0 == r_hat).map(|p| p.1).min();
    Ok(ColouringNumber {
        r_hat,
        s_witness,
        at_cap: r_hat == t_max,
        t_max,
        n_check,
        contained,
    })
}

/// Predicted `lim log2 |Q^L_n| / C(n, 2) = 1 - 1/r`.
pub fn max_entropy_prediction(c: &HereditaryClass, col: &ColouringNumber) -> Result<f64> {
    if col.at_cap {
        return if c.kind == ClassKind::All {
            Ok(1.0)
        } else {
            Err(Error::Inconclusive(format!(
                "C({0}, u) ⊆ {1} holds at the cap t_max = {0}; the colouring number may be larger",
                col.t_max,
                c.name()
            )))
        };
    }
    if col.r_hat == 0 {
        return Err(Error::Inconclusive(format!("no C(t, u) is contained in {} on {} vertices", c.name(), col.n_check)));
    }
    Ok(1.0 - 1.0 / col.r_hat as f64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(name: &str) -> (usize, Option<usize>) {
        let col = colouring_number(&name.parse().unwrap(), 5, 6).unwrap();
        (col.r_hat, col.s_witness)
    }

    #[test]
    fn shipped_classes() {
        assert_eq!(check("bipartite"), (2, Some(0)));
        assert_eq!(check("split"), (2, Some(1)));
        assert_eq!(check("kt_free:3"), (2, Some(0)));
        assert_eq!(check("kt_free:5"), (4, Some(0)));
        assert_eq!(check("crs:3,2"), (3, Some(2)));
    }

    #[test]
    fn predictions() {
        let bip: HereditaryClass = "bipartite".parse().unwrap();
        let col = colouring_number(&bip, 5, 6).unwrap();
        assert_eq!(max_entropy_prediction(&bip, &col).unwrap(), 0.5);
        let all = HereditaryClass::all();
        let col = colouring_number(&all, 5, 6).unwrap();
        assert!(col.at_cap);
        assert_eq!(max_entropy_prediction(&all, &col).unwrap(), 1.0);
        let wide: HereditaryClass = "kt_free:7".parse().unwrap();
        let col = colouring_number(&wide, 5, 6).unwrap();
        assert!(col.at_cap);
        assert!(matches!(max_entropy_prediction(&wide, &col), Err(Error::Inconclusive(_))));
    }

    #[test]
    fn limits() {
        let c = HereditaryClass::all();
        assert!(colouring_number(&c, 6, 6).is_err());
        assert!(colouring_number(&c, 5, 8).is_err());
    }
}
