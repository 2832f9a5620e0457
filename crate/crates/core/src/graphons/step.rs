use num_traits::Zero;

use super::{Mass, StepFunction, StepGraphon};
use crate::{Error, Result};

/// How to coarsen a step graphon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Partition {
    /// `assignment[b]` is the group of source block `b`; groups are
    /// `0..m` and each must be nonempty.
    Groups(Vec<usize>),
    /// `m` consecutive intervals of length `1/m`.
    Equal(usize),
}

impl Partition {
    pub fn identity(k: usize) -> Self {
        Partition::Groups((0..k).collect())
    }
}

/// Conditional expectation of `w` on the sigma-algebra generated by `p`.
pub fn step(w: &StepGraphon, p: &Partition) -> Result<StepGraphon> {
    match p {
        Partition::Equal(m) => bar_k(w, *m),
        Partition::Groups(assignment) => {
            if assignment.len() != w.k() {
                return Err(Error::domain(format!(
                    "partition assigns {} blocks but the graphon has {}",
                    assignment.len(),
                    w.k()
                )));
            }
            let groups = assignment.iter().max().map_or(0, |&g| g + 1);
            let mut used = vec![false; groups];
            for &g in assignment {
                used[g] = true;
            }
            if let Some(g) = used.iter().position(|u| !u) {
                return Err(Error::domain(format!("partition group {g} is empty")));
            }
            Ok(StepGraphon::from_step_function(
                w.as_step_function().coarsen(assignment, groups).clamped(),
            ))
        }
    }
}

/// `W̄_k`: the average of `w` over the `k x k` grid of equal intervals.
pub fn bar_k(w: &StepGraphon, k: usize) -> Result<StepGraphon> {
    if k == 0 {
        return Err(Error::domain("bar_k needs k >= 1"));
    }
    Ok(StepGraphon::from_step_function(equipartition_average(w.as_step_function(), k).clamped()))
}

pub(crate) fn equipartition_average(f: &StepFunction, k: usize) -> StepFunction {
    let cuts: Vec<Mass> = (1..k as i64).map(|j| Mass::new(j, k as i64)).collect();
    let (fine, _) = f.split_at(&cuts);
    let mut left = Mass::zero();
    let assignment: Vec<usize> = fine
        .masses()
        .iter()
        .map(|m| {
            let interval = (left * Mass::from_integer(k as i64)).floor().to_integer() as usize;
            left += m;
            interval
        })
        .collect();
    fine.coarsen(&assignment, k)
}

/// Splits both graphons along the union of their block boundaries so they
/// share one block structure.
pub fn common_refine(u: &StepGraphon, v: &StepGraphon) -> (StepGraphon, StepGraphon) {
    let (a, b) = refine_pair(u.as_step_function(), v.as_step_function());
    (StepGraphon::from_step_function(a), StepGraphon::from_step_function(b))
}

pub(crate) fn refine_pair(u: &StepFunction, v: &StepFunction) -> (StepFunction, StepFunction) {
    let mut cuts = u.boundaries();
    cuts.extend(v.boundaries());
    (u.split_at(&cuts).0, v.split_at(&cuts).0)
}

impl StepFunction {
    /// Removes rounding excursions just outside `[0, 1]` left by averaging.
    pub(crate) fn clamped(&self) -> StepFunction {
        self.map_values(|x| x.clamp(0.0, 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphons::edge_density;

    fn m(p: i64, q: i64) -> Mass {
        Mass::new(p, q)
    }

    #[test]
    fn bar_one_is_constant_density() {
        let w = StepGraphon::string_a(m(1, 8)).unwrap();
        let b = bar_k(&w, 1).unwrap();
        assert_eq!(b.k(), 1);
        assert!((b.value(0, 0) - 19.0 / 32.0).abs() < 1e-15);
    }

    #[test]
    fn identity_and_aligned_steps() {
        let w = StepGraphon::wrs(3, 1).unwrap();
        assert_eq!(step(&w, &Partition::identity(3)).unwrap(), w);
        let t = StepGraphon::turan(2).unwrap();
        assert_eq!(bar_k(&t, 2).unwrap(), t);
        assert!(bar_k(&t, 0).is_err());
        assert!(step(&w, &Partition::Groups(vec![0, 2, 2])).is_err());
        assert!(step(&w, &Partition::Groups(vec![0, 1])).is_err());
    }

    #[test]
    fn bar_splits_blocks() {
        // turan(2) on thirds: the middle third straddles the boundary.
        let t = StepGraphon::turan(2).unwrap();
        let b = bar_k(&t, 3).unwrap();
        assert_eq!(b.masses(), &[m(1, 3); 3]);
        // cell (0,1): first third vs middle third; half of the middle is
        // in the same block as the first third.
        assert!((b.value(0, 1) - 0.5).abs() < 1e-15);
        assert!((b.value(1, 1) - 0.5).abs() < 1e-15);
        assert!((edge_density(&b) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn group_partition() {
        let w = StepGraphon::wrs(2, 0).unwrap();
        let c = step(&w, &Partition::Groups(vec![0, 0])).unwrap();
        assert_eq!(c.k(), 1);
        assert!((c.value(0, 0) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn refinement_overlay() {
        let u = StepGraphon::turan(2).unwrap();
        let v = StepGraphon::new(vec![m(1, 3), m(2, 3)], vec![vec![0.1, 0.2], vec![0.2, 0.3]]).unwrap();
        let (a, b) = common_refine(&u, &v);
        assert_eq!(a.masses(), &[m(1, 3), m(1, 6), m(1, 2)]);
        assert_eq!(b.masses(), a.masses());
        assert!((edge_density(&a) - edge_density(&u)).abs() < 1e-15);
        assert!((edge_density(&b) - edge_density(&v)).abs() < 1e-15);
        let (x, y) = common_refine(&u, &u);
        assert_eq!((x, y), (u.clone(), u));
    }
}
