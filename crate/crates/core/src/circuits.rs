//! Circuits of a constraint pair `(A, B)`.
//!
//! A circuit is a nonzero `g` in `ker(A)`, scaled to coprime integers, whose
//! image `B g` has inclusion-minimal support. Two independent recognizers are
//! available: the extreme-ray test on the lifted cone
//! `C = {(x, y+, y-) : A x = 0, B x = y+ - y-, y+, y- >= 0}` and, for
//! enumeration, the equivalent rank test on the rows of `B` vanishing on `g`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::polyhedron::Polyhedron;
use crate::ratlin::{self, Rat, RatMat, RatVec};
use crate::WorkBudget;

/// A circuit direction normalized to coprime integer entries.
///
/// Enumeration returns circuits in canonical orientation (first nonzero entry
/// of `B g` positive); steps and decompositions carry whichever orientation
/// they move along.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    entries: Vec<BigInt>,
    /// Signs of `B g`, one per row of `B`.
    image_signs: Vec<i8>,
}

impl Circuit {
    /// Normalizes `v` (any positive multiple of a circuit) without changing its
    /// orientation. Does not check the circuit property.
    pub(crate) fn from_direction(p: &Polyhedron, v: &[Rat]) -> Self {
        let entries = ratlin::primitive_integer(v);
        let image = p.ineq_matrix().mul_vec(&ratlin::to_rats(&entries));
        let image_signs = image
            .iter()
            .map(|x| if x.is_positive() { 1 } else if x.is_negative() { -1 } else { 0 })
            .collect();
        Circuit { entries, image_signs }
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn direction(&self) -> RatVec {
        ratlin::to_rats(&self.entries)
    }

    pub fn image_signs(&self) -> &[i8] {
        &self.image_signs
    }

    /// Rows `j` of `B` with `(B g)_j != 0`.
    pub fn image_support(&self) -> Vec<usize> {
        self.image_signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s != 0)
            .map(|(j, _)| j)
            .collect()
    }

    pub fn negated(&self) -> Circuit {
        Circuit {
            entries: self.entries.iter().map(|x| -x).collect(),
            image_signs: self.image_signs.iter().map(|s| -s).collect(),
        }
    }

    pub fn is_canonical(&self) -> bool {
        match self.image_signs.iter().find(|s| **s != 0) {
            Some(s) => *s > 0,
            None => self.entries.iter().find(|x| !x.is_zero()).is_some_and(Signed::is_positive),
        }
    }

    pub fn canonical(&self) -> Circuit {
        if self.is_canonical() {
            self.clone()
        } else {
            self.negated()
        }
    }

    pub fn l1_norm(&self) -> BigInt {
        self.entries.iter().map(|x| x.abs()).sum()
    }
}

impl fmt::Debug for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Circuit({})", ratlin::format_ints(&self.entries))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&ratlin::format_ints(&self.entries))
    }
}

/// A point of the lifted cone `C`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeLift {
    pub x: RatVec,
    pub yplus: RatVec,
    pub yminus: RatVec,
}

impl ConeLift {
    pub fn is_zero(&self) -> bool {
        ratlin::is_zero_vec(&self.x) && ratlin::is_zero_vec(&self.yplus) && ratlin::is_zero_vec(&self.yminus)
    }

    /// The trivial cone element with `x = 0` and `y+_i = y-_i = 1`.
    pub fn trivial(p: &Polyhedron, i: usize) -> ConeLift {
        let m_b = p.ineq_matrix().rows();
        let mut y = ratlin::zeros(m_b);
        y[i] = ratlin::int(1);
        ConeLift {
            x: ratlin::zeros(p.dim()),
            yplus: y.clone(),
            yminus: y,
        }
    }

    fn in_cone(&self, p: &Polyhedron) -> bool {
        let m_b = p.ineq_matrix().rows();
        if self.x.len() != p.dim() || self.yplus.len() != m_b || self.yminus.len() != m_b {
            return false;
        }
        p.in_kernel(&self.x)
            && self.yplus.iter().chain(&self.yminus).all(|y| !y.is_negative())
            && p.ineq_matrix().mul_vec(&self.x) == ratlin::sub(&self.yplus, &self.yminus)
    }
}

/// Canonical lift `(v, max(Bv, 0), max(-Bv, 0))` of a kernel vector.
pub fn lift(p: &Polyhedron, v: &[Rat]) -> Result<ConeLift> {
    p.check_point(v, "vector")?;
    if !p.in_kernel(v) {
        return Err(Error::usage("cannot lift a vector outside ker(A)"));
    }
    let image = p.ineq_matrix().mul_vec(v);
    let zero = Rat::zero();
    let yplus = image.iter().map(|t| t.max(&zero).clone()).collect();
    let yminus = image.iter().map(|t| (-t).max(zero.clone())).collect();
    Ok(ConeLift {
        x: v.to_vec(),
        yplus,
        yminus,
    })
}

/// True iff the constraints of `C` active at `l` have rank `n + 2 m_B - 1`,
/// i.e. `l` spans a one-dimensional face of the cone.
pub fn is_extreme_ray(p: &Polyhedron, l: &ConeLift) -> Result<bool> {
    if l.is_zero() {
        return Err(Error::usage("the zero vector is not a ray"));
    }
    if !l.in_cone(p) {
        return Err(Error::usage("lift is not a point of the cone"));
    }
    let n = p.dim();
    let eq = p.eq_matrix();
    let ineq = p.ineq_matrix();
    let m_b = ineq.rows();
    let width = n + 2 * m_b;

    let mut active = RatMat::zeros(0, width);
    let mut row = ratlin::zeros(width);
    for i in 0..eq.rows() {
        row.iter_mut().for_each(|x| x.set_zero());
        row[..n].clone_from_slice(eq.row(i));
        active.push_row(&row);
    }
    // B x - y+ + y- = 0
    for i in 0..m_b {
        row.iter_mut().for_each(|x| x.set_zero());
        row[..n].clone_from_slice(ineq.row(i));
        row[n + i] = ratlin::int(-1);
        row[n + m_b + i] = ratlin::int(1);
        active.push_row(&row);
    }
    for (offset, y) in [(n, &l.yplus), (n + m_b, &l.yminus)] {
        for (i, value) in y.iter().enumerate() {
            if value.is_zero() {
                row.iter_mut().for_each(|x| x.set_zero());
                row[offset + i] = ratlin::int(1);
                active.push_row(&row);
            }
        }
    }
    Ok(ratlin::rank(&active) == width - 1)
}

/// Is `v` a positive multiple of a circuit of `p`? Decided through the
/// extreme-ray test on the canonical lift.
pub fn is_circuit_direction(p: &Polyhedron, v: &[Rat]) -> bool {
    if v.len() != p.dim() || ratlin::is_zero_vec(v) || !p.in_kernel(v) {
        return false;
    }
    let l = lift(p, v).expect("kernel vector lifts");
    is_extreme_ray(p, &l).expect("nonzero lift of a kernel vector lies in the cone")
}

/// Incrementally maintained echelon basis of a row space.
#[derive(Default)]
struct Echelon {
    rows: Vec<(usize, RatVec)>,
}

impl Echelon {
    fn reduce(&self, v: &[Rat]) -> RatVec {
        let mut out = v.to_vec();
        for (pivot, row) in &self.rows {
            if out[*pivot].is_zero() {
                continue;
            }
            let f = out[*pivot].clone();
            for (x, y) in out.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        out
    }

    /// Adds an already reduced nonzero row.
    fn push_reduced(&mut self, mut v: RatVec) {
        let pivot = v.iter().position(|x| !x.is_zero()).expect("nonzero row");
        let inv = ratlin::int(1) / &v[pivot];
        for x in v.iter_mut() {
            *x *= &inv;
        }
        self.rows.push((pivot, v));
    }

    /// Kernel vector when the basis has exactly `cols - 1` rows. Row `k` is
    /// zero on the pivots of rows before it, so back-substitution in reverse
    /// insertion order only reads coordinates that are already set.
    fn null_vector(&self, cols: usize) -> RatVec {
        debug_assert_eq!(self.rows.len() + 1, cols);
        let mut is_pivot = vec![false; cols];
        for (p, _) in &self.rows {
            is_pivot[*p] = true;
        }
        let free = is_pivot.iter().position(|&b| !b).expect("one free column");
        let mut v = ratlin::zeros(cols);
        v[free] = ratlin::int(1);
        for (p, row) in self.rows.iter().rev() {
            let mut acc = Rat::zero();
            for (j, (x, y)) in row.iter().zip(&v).enumerate() {
                if j != *p && !x.is_zero() && !y.is_zero() {
                    acc -= x * y;
                }
            }
            v[*p] = acc;
        }
        v
    }
}

/// Rows of `B` up to positive or negative scaling, zero rows dropped. The
/// zero set of a direction only depends on these.
fn distinct_hyperplanes(ineq: &RatMat) -> Vec<RatVec> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for row in ineq.row_iter() {
        if ratlin::is_zero_vec(row) {
            continue;
        }
        let key = ratlin::canonical_integer(row);
        if seen.insert(key.clone()) {
            out.push(ratlin::to_rats(&key));
        }
    }
    out
}

struct Enumerator<'a> {
    p: &'a Polyhedron,
    hyperplanes: Vec<RatVec>,
    target: usize,
    budget: u64,
    work: u64,
    found: BTreeSet<Circuit>,
}

impl Enumerator<'_> {
    fn descend(&mut self, basis: &mut Echelon, start: usize, chosen: usize) -> Result<()> {
        if chosen == self.target {
            let g = Circuit::from_direction(self.p, &basis.null_vector(self.p.dim())).canonical();
            self.found.insert(g);
            return Ok(());
        }
        let remaining = self.target - chosen;
        for idx in start..self.hyperplanes.len() {
            if self.hyperplanes.len() - idx < remaining {
                break;
            }
            self.work += 1;
            if self.work > self.budget {
                return Err(Error::WorkBudget {
                    what: format!(
                        "circuit enumeration over {} hyperplanes in dimension {}",
                        self.hyperplanes.len(),
                        self.p.dim()
                    ),
                    budget: self.budget,
                });
            }
            let reduced = basis.reduce(&self.hyperplanes[idx]);
            if ratlin::is_zero_vec(&reduced) {
                continue;
            }
            basis.push_reduced(reduced);
            self.descend(basis, idx + 1, chosen + 1)?;
            basis.rows.pop();
        }
        Ok(())
    }
}

/// All circuits of `p`, one per `±` pair, canonically oriented and sorted
/// lexicographically.
///
/// For pointed `P`, a nonzero kernel vector is a circuit iff the rows of `B`
/// vanishing on it have rank `n - 1` together with `A`. Every such zero set
/// contains `n - 1 - rank(A)` rows extending a basis of the row space of `A`,
/// so it suffices to visit independent row subsets of exactly that size.
pub fn enumerate_circuits(p: &Polyhedron, budget: WorkBudget) -> Result<Vec<Circuit>> {
    p.require_pointed()?;
    let n = p.dim();
    let mut basis = Echelon::default();
    for row in p.eq_matrix().row_iter() {
        let reduced = basis.reduce(row);
        if !ratlin::is_zero_vec(&reduced) {
            basis.push_reduced(reduced);
        }
    }
    let rank_a = basis.rows.len();
    if rank_a == n {
        return Ok(Vec::new());
    }
    let mut e = Enumerator {
        p,
        hyperplanes: distinct_hyperplanes(p.ineq_matrix()),
        target: n - 1 - rank_a,
        budget: budget.0,
        work: 0,
        found: BTreeSet::new(),
    };
    e.descend(&mut basis, 0, 0)?;
    Ok(e.found.into_iter().collect())
}

/// Circuit test via the zero set of `B v`; used as a cross-check of the cone
/// test and inside the decomposition.
pub fn is_circuit_by_zero_set(p: &Polyhedron, v: &[Rat]) -> bool {
    if v.len() != p.dim() || ratlin::is_zero_vec(v) || !p.in_kernel(v) {
        return false;
    }
    let image = p.ineq_matrix().mul_vec(v);
    let zero_rows: Vec<usize> = (0..image.len()).filter(|&j| image[j].is_zero()).collect();
    let system = p.eq_matrix().vstack(&p.ineq_matrix().select_rows(&zero_rows));
    ratlin::rank(&system) == p.dim() - 1
}
