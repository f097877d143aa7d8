use num_traits::{One, Zero};

use super::{canonical_integer, to_rats, Rat, RatMat, RatVec};
use crate::error::{Error, Result};

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Rref {
    pub matrix: RatMat,
    pub pivots: Vec<usize>,
}

/// Eliminates below (and, when `reduce` is set, above) each pivot. The pivot
/// row is the first row at or below the current one with a nonzero entry in
/// the pivot column.
fn eliminate(m: &mut RatMat, reduce: bool, col_limit: usize) -> Vec<usize> {
    let rows = m.rows();
    let cols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..col_limit {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m.get(i, c).is_zero()) else {
            continue;
        };
        if p != r {
            for j in 0..cols {
                let tmp = m.get(p, j).clone();
                let other = m.get(r, j).clone();
                m.set(p, j, other);
                m.set(r, j, tmp);
            }
        }
        let inv = Rat::one() / m.get(r, c);
        if !inv.is_one() {
            for x in m.row_mut(r)[c..].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row: Vec<Rat> = m.row(r).to_vec();
        let targets = if reduce { 0..rows } else { r + 1..rows };
        for i in targets {
            if i == r || m.get(i, c).is_zero() {
                continue;
            }
            let factor = m.get(i, c).clone();
            let row = m.row_mut(i);
            for (x, y) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                if !y.is_zero() {
                    *x -= &factor * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rref(m: &RatMat) -> Rref {
    let mut matrix = m.clone();
    let pivots = eliminate(&mut matrix, true, m.cols());
    Rref { matrix, pivots }
}

/// Dimension of the row space.
pub fn rank(m: &RatMat) -> usize {
    let mut work = m.clone();
    eliminate(&mut work, false, m.cols()).len()
}

/// Basis of `{v : M v = 0}`, one vector per free column. Each vector is scaled
/// to coprime integers with its first nonzero entry positive.
pub fn kernel_basis(m: &RatMat) -> Vec<RatVec> {
    let Rref { matrix, pivots } = rref(m);
    let n = m.cols();
    let mut is_pivot = vec![false; n];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..n)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = vec![Rat::zero(); n];
            v[f] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -matrix.get(i, f);
            }
            to_rats(&canonical_integer(&v))
        })
        .collect()
}

/// One exact solution of `M x = rhs` (free variables set to zero), or `None`
/// when the system is inconsistent.
pub fn solve(m: &RatMat, rhs: &[Rat]) -> Result<Option<RatVec>> {
    if rhs.len() != m.rows() {
        return Err(Error::Dimension(format!(
            "right-hand side has {} entries, matrix has {} rows",
            rhs.len(),
            m.rows()
        )));
    }
    let n = m.cols();
    let mut aug = RatMat::zeros(m.rows(), n + 1);
    for (i, b) in rhs.iter().enumerate() {
        let row = aug.row_mut(i);
        row[..n].clone_from_slice(m.row(i));
        row[n] = b.clone();
    }
    let pivots = eliminate(&mut aug, true, n);
    let r = pivots.len();
    if (r..m.rows()).any(|i| !aug.get(i, n).is_zero()) {
        return Ok(None);
    }
    let mut x = vec![Rat::zero(); n];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = aug.get(i, n).clone();
    }
    Ok(Some(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int, ints};

    fn triangle_incidence() -> RatMat {
        // arcs (1,2), (2,3), (3,1); +1 at tail, -1 at head
        RatMat::from_ints(3, &[vec![1, 0, -1], vec![-1, 1, 0], vec![0, -1, 1]])
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RatMat::identity(2)), 2);
        assert_eq!(rank(&RatMat::zeros(3, 4)), 0);
        assert_eq!(rank(&triangle_incidence()), 2);
        assert_eq!(rank(&RatMat::zeros(0, 3)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&RatMat::from_ints(2, &[vec![1, -1]])), vec![ints(&[1, 1])]);
        assert!(kernel_basis(&RatMat::identity(2)).is_empty());
        assert_eq!(kernel_basis(&triangle_incidence()), vec![ints(&[1, 1, 1])]);
        assert_eq!(kernel_basis(&RatMat::zeros(0, 2)), vec![ints(&[1, 0]), ints(&[0, 1])]);
    }

    #[test]
    fn kernel_is_normalized() {
        let m = RatMat::from_rows(3, vec![vec![frac(1, 2), frac(1, 3), int(0)]]).unwrap();
        for v in kernel_basis(&m) {
            assert!(v.iter().all(|x| x.is_integer()));
            assert!(v.iter().find(|x| !x.is_zero()).unwrap() > &int(0));
            assert!(m.mul_vec(&v).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn solve_examples() {
        let x = solve(&RatMat::identity(2), &[frac(3, 2), int(-2)]).unwrap();
        assert_eq!(x, Some(vec![frac(3, 2), int(-2)]));

        let m = RatMat::from_ints(2, &[vec![1, 1]]);
        let x = solve(&m, &[int(1)]).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], int(1));

        let m = RatMat::from_ints(1, &[vec![1], vec![1]]);
        assert_eq!(solve(&m, &[int(0), int(1)]).unwrap(), None);
    }

    #[test]
    fn solve_rejects_bad_rhs() {
        assert!(matches!(
            solve(&RatMat::identity(2), &[int(1)]),
            Err(Error::Dimension(_))
        ));
    }
}
