//! Conformal decomposition of kernel vectors into sign-compatible circuits.

use num_traits::{Signed, Zero};

use crate::circuits::{self, Circuit};
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::polyhedron::Polyhedron;
use crate::ratlin::{self, Rat, RatMat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalTerm {
    pub alpha: Rat,
    pub circuit: Circuit,
}

/// `target = sum alpha_i g_i` with every `g_i` conformal to `target` on `B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConformalSum {
    pub terms: Vec<ConformalTerm>,
    pub target: RatVec,
}

impl ConformalSum {
    pub fn reconstruct(&self, dim: usize) -> RatVec {
        self.terms
            .iter()
            .fold(ratlin::zeros(dim), |acc, t| ratlin::axpy(&acc, &t.alpha, &t.circuit.direction()))
    }
}

fn sign(x: &Rat) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Decomposes `z` into at most `n - rank(A)` sign-compatible circuits.
///
/// Each round takes the minimal face of the conformal cone of `z` that holds
/// the residual `r`, normalizes it by fixing `(B v)_k = (B r)_k` on the first
/// row `k` in the support of `B r`, and takes a vertex of that slice as the
/// next circuit. Subtracting the largest multiple that stays in the cone
/// zeroes a further row of `B r`, so the face dimension drops every round.
/// Terms come back sorted by the canonical form of their circuits.
pub fn decompose(p: &Polyhedron, z: &[Rat]) -> Result<ConformalSum> {
    p.check_point(z, "vector")?;
    p.require_pointed()?;
    if ratlin::is_zero_vec(z) {
        return Err(Error::usage("cannot decompose the zero vector"));
    }
    if !p.in_kernel(z) {
        return Err(Error::usage("vector to decompose is not in ker(A)"));
    }
    let n = p.dim();
    let ineq = p.ineq_matrix();
    let mut residual = z.to_vec();
    let mut terms = Vec::new();

    while !ratlin::is_zero_vec(&residual) {
        let image = ineq.mul_vec(&residual);
        let k = image
            .iter()
            .position(|x| !x.is_zero())
            .expect("pointedness keeps B r nonzero");

        let mut eq = p.eq_matrix().clone();
        let mut eq_rhs = ratlin::zeros(eq.rows());
        let mut cone_rows = RatMat::zeros(0, n);
        for (j, value) in image.iter().enumerate() {
            if value.is_zero() {
                eq.push_row(ineq.row(j));
                eq_rhs.push(Rat::zero());
            } else if j == k {
                eq.push_row(ineq.row(j));
                eq_rhs.push(value.clone());
            } else {
                // sigma_j (B v)_j >= 0
                let row = if value.is_positive() {
                    ratlin::neg(ineq.row(j))
                } else {
                    ineq.row(j).to_vec()
                };
                cone_rows.push_row(&row);
            }
        }
        let slice_rhs = ratlin::zeros(cone_rows.rows());
        let slice = Polyhedron::new(eq, eq_rhs, cone_rows, slice_rhs)?;
        let vertex = match lp::solve_lp(&slice, &ratlin::zeros(n))? {
            LpOutcome::Optimal { vertex, .. } => vertex,
            other => unreachable!("slice through the residual is feasible and bounded: {other:?}"),
        };
        let circuit = Circuit::from_direction(p, &vertex);
        let g = circuit.direction();
        let g_image = ineq.mul_vec(&g);

        let mut alpha: Option<Rat> = None;
        for j in 0..image.len() {
            if image[j].is_zero() || sign(&g_image[j]) != sign(&image[j]) {
                continue;
            }
            let bound = &image[j] / &g_image[j];
            if alpha.as_ref().is_none_or(|a| bound < *a) {
                alpha = Some(bound);
            }
        }
        let alpha = alpha.expect("normalized row keeps the sign of the residual");
        residual = ratlin::axpy(&residual, &-&alpha, &g);
        terms.push(ConformalTerm { alpha, circuit });
    }
    terms.sort_by_cached_key(|t| t.circuit.canonical());

    Ok(ConformalSum {
        terms,
        target: z.to_vec(),
    })
}

/// Checks exact reconstruction, positivity of every `alpha`, sign
/// compatibility on `B`, the term-count bound `n - rank(A)` and that every
/// direction is a circuit.
pub fn verify_conformal(p: &Polyhedron, s: &ConformalSum) -> bool {
    let n = p.dim();
    if s.target.len() != n || s.terms.iter().any(|t| t.circuit.entries().len() != n) {
        return false;
    }
    if s.terms.iter().any(|t| !t.alpha.is_positive()) {
        return false;
    }
    if s.reconstruct(n) != s.target {
        return false;
    }
    if s.terms.len() > n - ratlin::rank(p.eq_matrix()) {
        return false;
    }
    let target_image = p.ineq_matrix().mul_vec(&s.target);
    for t in &s.terms {
        let g = t.circuit.direction();
        let image = p.ineq_matrix().mul_vec(&g);
        for (gj, tj) in image.iter().zip(&target_image) {
            if tj.is_zero() {
                if !gj.is_zero() {
                    return false;
                }
            } else if (gj * tj).is_negative() {
                return false;
            }
        }
        if !circuits::is_circuit_direction(p, &g) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratlin::{frac, int, ints, zeros};
    use std::collections::BTreeSet;

    fn unit_square() -> Polyhedron {
        Polyhedron::boxed(&zeros(2), &ints(&[1, 1])).unwrap()
    }

    fn two_triangles() -> Polyhedron {
        let arcs = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        let mut a = RatMat::zeros(6, 6);
        for (e, &(t, h)) in arcs.iter().enumerate() {
            a.set(t, e, int(1));
            a.set(h, e, int(-1));
        }
        let ineq = RatMat::identity(6).vstack(&RatMat::identity(6).negated());
        let mut d = vec![int(1); 6];
        d.extend(zeros(6));
        Polyhedron::new(a, zeros(6), ineq, d).unwrap()
    }

    fn as_set(s: &ConformalSum) -> BTreeSet<(Rat, Vec<i64>)> {
        s.terms
            .iter()
            .map(|t| {
                let e = t.circuit.entries().iter().map(|x| i64::try_from(x).unwrap()).collect();
                (t.alpha.clone(), e)
            })
            .collect()
    }

    #[test]
    fn square_diagonal_splits_into_unit_vectors() {
        let s = decompose(&unit_square(), &ints(&[1, 1])).unwrap();
        let expected: BTreeSet<_> = [(int(1), vec![1, 0]), (int(1), vec![0, 1])].into_iter().collect();
        assert_eq!(as_set(&s), expected);
        let order: Vec<_> = s.terms.iter().map(|t| t.circuit.canonical()).collect();
        assert!(order.windows(2).all(|w| w[0] <= w[1]));
        assert!(verify_conformal(&unit_square(), &s));
    }

    #[test]
    fn scaled_circuit_is_single_term() {
        let s = decompose(&unit_square(), &[frac(1, 2), int(0)]).unwrap();
        let expected: BTreeSet<_> = [(frac(1, 2), vec![1, 0])].into_iter().collect();
        assert_eq!(as_set(&s), expected);
    }

    #[test]
    fn disjoint_cycles_split_per_cycle() {
        let p = two_triangles();
        let s = decompose(&p, &ints(&[1, 1, 1, 1, 1, 1])).unwrap();
        let expected: BTreeSet<_> = [
            (int(1), vec![1, 1, 1, 0, 0, 0]),
            (int(1), vec![0, 0, 0, 1, 1, 1]),
        ]
        .into_iter()
        .collect();
        assert_eq!(as_set(&s), expected);
        assert!(verify_conformal(&p, &s));
    }

    #[test]
    fn verifier_rejects_flipped_sign() {
        let sq = unit_square();
        let mut s = decompose(&sq, &ints(&[1, 1])).unwrap();
        s.terms[0].circuit = s.terms[0].circuit.negated();
        assert!(!verify_conformal(&sq, &s));
    }

    #[test]
    fn verifier_counts_terms() {
        // n - rank(A) = 2 for the square; split one term into halves -> 3 terms
        let sq = unit_square();
        let mut s = decompose(&sq, &ints(&[1, 1])).unwrap();
        let first = s.terms.remove(0);
        let half = &first.alpha / int(2);
        s.terms.insert(0, ConformalTerm { alpha: half.clone(), circuit: first.circuit.clone() });
        s.terms.insert(0, ConformalTerm { alpha: half, circuit: first.circuit });
        assert_eq!(s.reconstruct(2), s.target);
        assert!(!verify_conformal(&sq, &s));
    }

    #[test]
    fn rejects_bad_input() {
        let sq = unit_square();
        assert!(matches!(decompose(&sq, &zeros(2)), Err(Error::Usage(_))));
        assert!(matches!(decompose(&two_triangles(), &ints(&[1, 0, 0, 0, 0, 0])), Err(Error::Usage(_))));
    }
}
