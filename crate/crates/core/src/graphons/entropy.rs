use super::{mass_f64, StepGraphon};
use crate::{Error, Result};

/// `h(x) = -x log2 x - (1-x) log2 (1-x)`, with `h(0) = h(1) = 0`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("binary entropy needs 0 <= x <= 1, got {x}")));
    }
    Ok(h(x))
}

/// `hx(x) = h(min(x, 1/2))` for `x >= 0`.
pub fn clipped_entropy(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::domain(format!("clipped entropy needs x >= 0, got {x}")));
    }
    Ok(h(x.min(0.5)))
}

pub(crate) fn h(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        0.0
    } else {
        -x * x.log2() - (1.0 - x) * (1.0 - x).log2()
    }
}

/// `-p log2 p`, zero at zero.
pub(crate) fn plogp(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// `Ent(W) = ∫∫ h(W)`.
pub fn entropy(w: &StepGraphon) -> f64 {
    let mu: Vec<f64> = w.masses().iter().map(mass_f64).collect();
    let mut total = 0.0;
    for (i, &a) in mu.iter().enumerate() {
        for (j, &b) in mu.iter().enumerate() {
            total += a * b * h(w.value(i, j));
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::Graph;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.25).unwrap() - 0.811_278_124_459_132_9).abs() < 1e-15);
        assert_eq!(clipped_entropy(0.75).unwrap(), 1.0);
        assert_eq!(clipped_entropy(7.0).unwrap(), 1.0);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
        assert!(clipped_entropy(-1.0).is_err());
    }

    #[test]
    fn graphon_entropies() {
        for r in 1..=6 {
            for s in 0..=r {
                let e = entropy(&StepGraphon::wrs(r, s).unwrap());
                assert!((e - (1.0 - 1.0 / r as f64)).abs() < 1e-12, "r={r} s={s}");
            }
        }
        assert_eq!(entropy(&StepGraphon::constant(0.5).unwrap()), 1.0);
        assert_eq!(entropy(&StepGraphon::from_graph(&Graph::cycle(7))), 0.0);
    }
}
