//! Polyhedra `{x | A x = b, B x <= d}` with exact membership tests.

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::ratlin::{self, Rat, RatMat, RatVec};

/// Feasible region of an LP in general form. `A` holds the equality rows,
/// `B` the inequality rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polyhedron {
    eq_matrix: RatMat,
    eq_rhs: RatVec,
    ineq_matrix: RatMat,
    ineq_rhs: RatVec,
    pointed: bool,
}

/// Largest feasible multiple of a direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepLength {
    Finite(Rat),
    Unbounded,
}

impl StepLength {
    pub fn finite(&self) -> Option<&Rat> {
        match self {
            StepLength::Finite(beta) => Some(beta),
            StepLength::Unbounded => None,
        }
    }

    /// True for an unbounded step or a strictly positive finite one.
    pub fn is_positive(&self) -> bool {
        match self {
            StepLength::Finite(beta) => beta.is_positive(),
            StepLength::Unbounded => true,
        }
    }
}

impl Polyhedron {
    /// Builds the polyhedron and rejects it unless `rank([A; B]) = n`.
    pub fn new(eq_matrix: RatMat, eq_rhs: RatVec, ineq_matrix: RatMat, ineq_rhs: RatVec) -> Result<Self> {
        let p = Self::new_allow_unpointed(eq_matrix, eq_rhs, ineq_matrix, ineq_rhs)?;
        if !p.pointed {
            return Err(Error::NotPointed {
                rank: ratlin::rank(&p.stacked()),
                dim: p.dim(),
            });
        }
        Ok(p)
    }

    /// Same as [`Polyhedron::new`] but keeps polyhedra that contain a line.
    /// Solvers still refuse them; this exists for experiments.
    pub fn new_allow_unpointed(
        eq_matrix: RatMat,
        eq_rhs: RatVec,
        ineq_matrix: RatMat,
        ineq_rhs: RatVec,
    ) -> Result<Self> {
        if eq_matrix.cols() != ineq_matrix.cols() {
            return Err(Error::Dimension(format!(
                "A has {} columns but B has {}",
                eq_matrix.cols(),
                ineq_matrix.cols()
            )));
        }
        if eq_rhs.len() != eq_matrix.rows() {
            return Err(Error::Dimension(format!(
                "b has {} entries but A has {} rows",
                eq_rhs.len(),
                eq_matrix.rows()
            )));
        }
        if ineq_rhs.len() != ineq_matrix.rows() {
            return Err(Error::Dimension(format!(
                "d has {} entries but B has {} rows",
                ineq_rhs.len(),
                ineq_matrix.rows()
            )));
        }
        let mut p = Polyhedron {
            eq_matrix,
            eq_rhs,
            ineq_matrix,
            ineq_rhs,
            pointed: false,
        };
        p.pointed = ratlin::rank(&p.stacked()) == p.dim();
        Ok(p)
    }

    /// The box `lower <= x <= upper`, encoded as `B = [I; -I]`, `d = (upper, -lower)`.
    pub fn boxed(lower: &[Rat], upper: &[Rat]) -> Result<Self> {
        let n = lower.len();
        if upper.len() != n {
            return Err(Error::Dimension("box bounds differ in length".into()));
        }
        let ineq = RatMat::identity(n).vstack(&RatMat::identity(n).negated());
        let mut d = upper.to_vec();
        d.extend(ratlin::neg(lower));
        Self::new(RatMat::zeros(0, n), Vec::new(), ineq, d)
    }

    pub fn dim(&self) -> usize {
        self.eq_matrix.cols()
    }

    pub fn eq_matrix(&self) -> &RatMat {
        &self.eq_matrix
    }

    pub fn eq_rhs(&self) -> &[Rat] {
        &self.eq_rhs
    }

    pub fn ineq_matrix(&self) -> &RatMat {
        &self.ineq_matrix
    }

    pub fn ineq_rhs(&self) -> &[Rat] {
        &self.ineq_rhs
    }

    /// `[A; B]`
    pub fn stacked(&self) -> RatMat {
        self.eq_matrix.vstack(&self.ineq_matrix)
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub(crate) fn require_pointed(&self) -> Result<()> {
        if self.pointed {
            Ok(())
        } else {
            Err(Error::NotPointed {
                rank: ratlin::rank(&self.stacked()),
                dim: self.dim(),
            })
        }
    }

    pub(crate) fn check_point(&self, x: &[Rat], what: &str) -> Result<()> {
        if x.len() != self.dim() {
            return Err(Error::Dimension(format!(
                "{what} has {} entries, polyhedron lives in dimension {}",
                x.len(),
                self.dim()
            )));
        }
        Ok(())
    }

    /// Exact membership. Panics if `x` has the wrong dimension.
    pub fn is_feasible(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim(), "point dimension mismatch");
        self.eq_matrix.mul_vec(x) == self.eq_rhs
            && self
                .ineq_matrix
                .mul_vec(x)
                .iter()
                .zip(&self.ineq_rhs)
                .all(|(lhs, rhs)| lhs <= rhs)
    }

    /// Is `A g = 0`?
    pub fn in_kernel(&self, g: &[Rat]) -> bool {
        self.eq_matrix.mul_vec(g).iter().all(Zero::is_zero)
    }

    /// Indices of the rows of `B` that hold with equality at `x`.
    pub fn active_rows(&self, x: &[Rat]) -> Result<Vec<usize>> {
        self.check_point(x, "point")?;
        if !self.is_feasible(x) {
            return Err(Error::usage("active_rows called with an infeasible point"));
        }
        Ok(self
            .ineq_matrix
            .mul_vec(x)
            .iter()
            .zip(&self.ineq_rhs)
            .enumerate()
            .filter(|(_, (lhs, rhs))| lhs == rhs)
            .map(|(j, _)| j)
            .collect())
    }

    /// Largest `beta >= 0` with `x0 + beta g` in P. Every row of `B` with
    /// `(B g)_j > 0` bounds `beta` by its slack over `(B g)_j`; the smallest
    /// bound wins. The zero direction yields 0.
    pub fn max_step(&self, x0: &[Rat], g: &[Rat]) -> Result<StepLength> {
        self.check_point(x0, "start point")?;
        self.check_point(g, "direction")?;
        if !self.in_kernel(g) {
            return Err(Error::usage("step direction is not in the kernel of A"));
        }
        if !self.is_feasible(x0) {
            return Err(Error::usage("start point is infeasible"));
        }
        Ok(self.max_step_unchecked(x0, g))
    }

    pub(crate) fn max_step_unchecked(&self, x0: &[Rat], g: &[Rat]) -> StepLength {
        if ratlin::is_zero_vec(g) {
            return StepLength::Finite(Rat::zero());
        }
        let mut best: Option<Rat> = None;
        for (j, row) in self.ineq_matrix.row_iter().enumerate() {
            let rate = ratlin::dot(row, g);
            if !rate.is_positive() {
                continue;
            }
            let slack = &self.ineq_rhs[j] - ratlin::dot(row, x0);
            let bound = slack / rate;
            if best.as_ref().is_none_or(|b| bound < *b) {
                best = Some(bound);
            }
        }
        match best {
            Some(beta) => StepLength::Finite(beta),
            None => StepLength::Unbounded,
        }
    }
}

/// A polyhedron together with the objective `c` of `min c^T x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpInstance {
    pub polyhedron: Polyhedron,
    pub objective: RatVec,
}

impl LpInstance {
    pub fn new(polyhedron: Polyhedron, objective: RatVec) -> Result<Self> {
        polyhedron.check_point(&objective, "objective")?;
        Ok(Self {
            polyhedron,
            objective,
        })
    }

    pub fn value(&self, x: &[Rat]) -> Rat {
        ratlin::dot(&self.objective, x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int, ints, zeros};

    pub(crate) fn unit_square() -> Polyhedron {
        Polyhedron::boxed(&zeros(2), &ints(&[1, 1])).unwrap()
    }

    fn triangle_circulation() -> Polyhedron {
        let a = RatMat::from_ints(3, &[vec![1, 0, -1], vec![-1, 1, 0], vec![0, -1, 1]]);
        let ineq = RatMat::identity(3).vstack(&RatMat::identity(3).negated());
        Polyhedron::new(a, zeros(3), ineq, ints(&[1, 1, 1, 0, 0, 0])).unwrap()
    }

    #[test]
    fn pointedness() {
        assert!(unit_square().is_pointed());
        assert!(triangle_circulation().is_pointed());
        let half_plane = Polyhedron::new_allow_unpointed(
            RatMat::zeros(0, 2),
            vec![],
            RatMat::from_ints(2, &[vec![1, 0]]),
            ints(&[0]),
        )
        .unwrap();
        assert!(!half_plane.is_pointed());
        assert!(matches!(
            Polyhedron::new(RatMat::zeros(0, 2), vec![], RatMat::from_ints(2, &[vec![1, 0]]), ints(&[0])),
            Err(Error::NotPointed { rank: 1, dim: 2 })
        ));
    }

    #[test]
    fn rejects_inconsistent_dimensions() {
        let err = Polyhedron::new(RatMat::zeros(1, 2), vec![], RatMat::identity(2), ints(&[1, 1]));
        assert!(matches!(err, Err(Error::Dimension(_))));
    }

    #[test]
    fn feasibility() {
        let sq = unit_square();
        assert!(sq.is_feasible(&[frac(1, 2), frac(1, 2)]));
        assert!(!sq.is_feasible(&ints(&[1, 2])));
        assert!(triangle_circulation().is_feasible(&ints(&[1, 1, 1])));
        assert!(!triangle_circulation().is_feasible(&ints(&[1, 1, 0])));
    }

    #[test]
    fn active_rows_examples() {
        let sq = unit_square();
        // rows 2 and 3 encode -x1 <= 0 and -x2 <= 0
        assert_eq!(sq.active_rows(&zeros(2)).unwrap(), vec![2, 3]);
        assert!(sq.active_rows(&[frac(1, 2), frac(1, 2)]).unwrap().is_empty());
        assert_eq!(triangle_circulation().active_rows(&zeros(3)).unwrap(), vec![3, 4, 5]);
        assert!(matches!(sq.active_rows(&ints(&[2, 0])), Err(Error::Usage(_))));
    }

    #[test]
    fn max_step_examples() {
        let sq = unit_square();
        assert_eq!(sq.max_step(&zeros(2), &ints(&[1, 0])).unwrap(), StepLength::Finite(int(1)));
        assert_eq!(sq.max_step(&zeros(2), &ints(&[1, 1])).unwrap(), StepLength::Finite(int(1)));
        assert_eq!(sq.max_step(&zeros(2), &zeros(2)).unwrap(), StepLength::Finite(int(0)));
        assert_eq!(
            sq.max_step(&[frac(1, 2), int(0)], &ints(&[2, 1])).unwrap(),
            StepLength::Finite(frac(1, 4))
        );

        let ray = Polyhedron::new(RatMat::zeros(0, 1), vec![], RatMat::from_ints(1, &[vec![-1]]), ints(&[0])).unwrap();
        assert_eq!(ray.max_step(&zeros(1), &ints(&[1])).unwrap(), StepLength::Unbounded);
    }

    #[test]
    fn max_step_rejects_non_kernel_direction() {
        let p = triangle_circulation();
        assert!(matches!(p.max_step(&zeros(3), &ints(&[1, 0, 0])), Err(Error::Usage(_))));
    }
}
