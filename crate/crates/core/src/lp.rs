//! Exact primal simplex over [`Polyhedron`]s.
//!
//! The polyhedron is brought into standard form by splitting every variable
//! into a positive and a negative part and adding one slack per inequality.
//! Phase 1 uses artificial variables only for rows that lack an obvious basic
//! slack; both phases pivot by Bland's rule, so the solver terminates and is
//! deterministic. Since a basic solution of the split form need not be a
//! vertex of the original polyhedron, the optimum is finally pushed along its
//! optimal face until the active constraints have full rank.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyhedron::{Polyhedron, StepLength};
use crate::ratlin::{self, Rat, RatMat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { vertex: RatVec, value: Rat },
    /// A ray `r` with `A r = 0`, `B r <= 0` and `c^T r < 0`.
    Unbounded { direction: RatVec },
    Infeasible,
}

impl LpOutcome {
    pub fn optimal(&self) -> Option<(&RatVec, &Rat)> {
        match self {
            LpOutcome::Optimal { vertex, value } => Some((vertex, value)),
            _ => None,
        }
    }
}

/// Whether the optimal face of an LP is a single point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub unique: bool,
    /// A second optimal point, present exactly when `unique` is false.
    #[serde(serialize_with = "crate::io::serialize_opt_vec")]
    pub witness: Option<RatVec>,
}

struct Tableau {
    rows: Vec<RatVec>,
    rhs: RatVec,
    basis: Vec<usize>,
    cost: RatVec,
    /// Columns that may enter the basis.
    allowed: Vec<bool>,
}

enum PhaseEnd {
    Optimal,
    Unbounded(usize),
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = Rat::one() / &self.rows[r][c];
        for x in self.rows[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rhs[r] *= &inv;
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &pivot_rhs;
        }
        if !self.cost[c].is_zero() {
            let f = self.cost[c].clone();
            for (x, y) in self.cost.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.basis[r] = c;
    }

    /// Runs Bland's rule on the current reduced-cost row.
    fn run(&mut self) -> PhaseEnd {
        loop {
            let entering = (0..self.cost.len()).find(|&j| self.allowed[j] && self.cost[j].is_negative());
            let Some(c) = entering else {
                return PhaseEnd::Optimal;
            };
            let mut leaving: Option<(usize, Rat)> = None;
            for i in 0..self.rows.len() {
                let t = &self.rows[i][c];
                if !t.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / t;
                let better = match &leaving {
                    None => true,
                    Some((r, best)) => ratio < *best || (ratio == *best && self.basis[i] < self.basis[*r]),
                };
                if better {
                    leaving = Some((i, ratio));
                }
            }
            match leaving {
                Some((r, _)) => self.pivot(r, c),
                None => return PhaseEnd::Unbounded(c),
            }
        }
    }

    fn set_cost(&mut self, cost: RatVec) {
        self.cost = cost;
        for i in 0..self.rows.len() {
            let cb = self.cost[self.basis[i]].clone();
            if cb.is_zero() {
                continue;
            }
            for (x, y) in self.cost.iter_mut().zip(&self.rows[i]) {
                if !y.is_zero() {
                    *x -= &cb * y;
                }
            }
        }
    }

    fn remove_row(&mut self, r: usize) {
        self.rows.remove(r);
        self.rhs.remove(r);
        self.basis.remove(r);
    }

    fn basic_values(&self, ncols: usize) -> RatVec {
        let mut v = ratlin::zeros(ncols);
        for (i, &j) in self.basis.iter().enumerate() {
            v[j] = self.rhs[i].clone();
        }
        v
    }
}

/// Minimizes `c^T x` over `p`. The returned optimum is always a vertex.
pub fn solve_lp(p: &Polyhedron, c: &[Rat]) -> Result<LpOutcome> {
    p.require_pointed()?;
    p.check_point(c, "objective")?;
    let n = p.dim();
    let eq = p.eq_matrix();
    let ineq = p.ineq_matrix();
    let m_a = eq.rows();
    let m_b = ineq.rows();
    let structural = 2 * n + m_b;

    let mut rows = Vec::with_capacity(m_a + m_b);
    let mut rhs = Vec::with_capacity(m_a + m_b);
    let mut needs_artificial = Vec::with_capacity(m_a + m_b);
    for i in 0..m_a {
        let mut row = ratlin::zeros(structural);
        for j in 0..n {
            row[j] = eq.get(i, j).clone();
            row[n + j] = -eq.get(i, j);
        }
        let mut b = p.eq_rhs()[i].clone();
        if b.is_negative() {
            row.iter_mut().for_each(|x| *x = -&*x);
            b = -b;
        }
        rows.push(row);
        rhs.push(b);
        needs_artificial.push(true);
    }
    for i in 0..m_b {
        let mut row = ratlin::zeros(structural);
        for j in 0..n {
            row[j] = ineq.get(i, j).clone();
            row[n + j] = -ineq.get(i, j);
        }
        row[2 * n + i] = Rat::one();
        let mut d = p.ineq_rhs()[i].clone();
        let flipped = d.is_negative();
        if flipped {
            row.iter_mut().for_each(|x| *x = -&*x);
            d = -d;
        }
        rows.push(row);
        rhs.push(d);
        needs_artificial.push(flipped);
    }

    let n_art = needs_artificial.iter().filter(|&&a| a).count();
    let ncols = structural + n_art;
    let mut basis = Vec::with_capacity(rows.len());
    let mut next_art = structural;
    for (i, row) in rows.iter_mut().enumerate() {
        row.resize(ncols, Rat::zero());
        if needs_artificial[i] {
            row[next_art] = Rat::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(2 * n + (i - m_a));
        }
    }

    let mut t = Tableau {
        rows,
        rhs,
        basis,
        cost: Vec::new(),
        allowed: vec![true; ncols],
    };

    if n_art > 0 {
        let mut phase1 = ratlin::zeros(ncols);
        for x in phase1[structural..].iter_mut() {
            *x = Rat::one();
        }
        t.set_cost(phase1);
        if let PhaseEnd::Unbounded(_) = t.run() {
            unreachable!("phase 1 objective is bounded below by zero");
        }
        let infeasibility: Rat = t
            .basis
            .iter()
            .zip(&t.rhs)
            .filter(|(&j, _)| j >= structural)
            .map(|(_, v)| v.clone())
            .sum();
        if infeasibility.is_positive() {
            return Ok(LpOutcome::Infeasible);
        }
        // Drive zero-level artificials out of the basis; rows where that is
        // impossible are redundant.
        let mut r = 0;
        while r < t.rows.len() {
            if t.basis[r] < structural {
                r += 1;
                continue;
            }
            match (0..structural).find(|&j| !t.rows[r][j].is_zero()) {
                Some(j) => {
                    t.pivot(r, j);
                    r += 1;
                }
                None => t.remove_row(r),
            }
        }
        for a in t.allowed[structural..].iter_mut() {
            *a = false;
        }
    }

    let mut phase2 = ratlin::zeros(ncols);
    for j in 0..n {
        phase2[j] = c[j].clone();
        phase2[n + j] = -&c[j];
    }
    t.set_cost(phase2);

    match t.run() {
        PhaseEnd::Unbounded(entering) => {
            let mut delta = ratlin::zeros(ncols);
            delta[entering] = Rat::one();
            for (i, &j) in t.basis.iter().enumerate() {
                delta[j] = -&t.rows[i][entering];
            }
            let direction: RatVec = (0..n).map(|j| &delta[j] - &delta[n + j]).collect();
            Ok(LpOutcome::Unbounded { direction })
        }
        PhaseEnd::Optimal => {
            let values = t.basic_values(ncols);
            let x: RatVec = (0..n).map(|j| &values[j] - &values[n + j]).collect();
            let vertex = purify(p, c, x);
            let value = ratlin::dot(c, &vertex);
            Ok(LpOutcome::Optimal { vertex, value })
        }
    }
}

/// Moves an optimal point along its optimal face until the active rows of
/// `[A; B]` have rank `n`. Every move keeps `c^T x` fixed and activates at
/// least one new independent row.
fn purify(p: &Polyhedron, c: &[Rat], mut x: RatVec) -> RatVec {
    loop {
        let active = p.active_rows(&x).expect("simplex optimum is feasible");
        let system = p.eq_matrix().vstack(&p.ineq_matrix().select_rows(&active));
        let Some(w) = ratlin::kernel_basis(&system).into_iter().next() else {
            return x;
        };
        debug_assert!(ratlin::dot(c, &w).is_zero(), "optimal face direction changes the objective");
        let step = match p.max_step_unchecked(&x, &w) {
            StepLength::Finite(beta) => ratlin::scale(&beta, &w),
            StepLength::Unbounded => {
                let back = ratlin::neg(&w);
                match p.max_step_unchecked(&x, &back) {
                    StepLength::Finite(beta) => ratlin::scale(&beta, &back),
                    StepLength::Unbounded => unreachable!("pointed polyhedron contains a line"),
                }
            }
        };
        x = ratlin::add(&x, &step);
    }
}

/// Is `x` a vertex of `p`, i.e. do the rows active at `x` together with `A`
/// have rank `n`?
pub fn is_vertex(p: &Polyhedron, x: &[Rat]) -> bool {
    match p.active_rows(x) {
        Ok(active) => {
            let system = p.eq_matrix().vstack(&p.ineq_matrix().select_rows(&active));
            ratlin::rank(&system) == p.dim()
        }
        Err(_) => false,
    }
}

/// Decides whether `xstar` is the only optimum of `min c^T x` over `p` by
/// minimizing and maximizing every coordinate over the optimal face.
pub fn verify_unique(p: &Polyhedron, c: &[Rat], xstar: &[Rat]) -> Result<UniquenessReport> {
    p.check_point(xstar, "candidate optimum")?;
    p.check_point(c, "objective")?;
    if !p.is_feasible(xstar) {
        return Err(Error::usage("candidate optimum is infeasible"));
    }
    let target = ratlin::dot(c, xstar);
    match solve_lp(p, c)? {
        LpOutcome::Optimal { value, .. } if value == target => {}
        _ => return Err(Error::usage("candidate point is not optimal")),
    }

    let face = optimal_face(p, c, &target)?;
    let n = p.dim();
    for i in 0..n {
        for sign in [1i64, -1] {
            let mut obj = ratlin::zeros(n);
            obj[i] = ratlin::int(sign);
            let witness = match solve_lp(&face, &obj)? {
                LpOutcome::Optimal { vertex, .. } if vertex[i] != xstar[i] => Some(vertex),
                LpOutcome::Optimal { .. } => None,
                LpOutcome::Unbounded { direction } => Some(ratlin::add(xstar, &direction)),
                LpOutcome::Infeasible => unreachable!("optimal face contains the candidate"),
            };
            if witness.is_some() {
                return Ok(UniquenessReport {
                    unique: false,
                    witness,
                });
            }
        }
    }
    Ok(UniquenessReport {
        unique: true,
        witness: None,
    })
}

/// `p` intersected with the hyperplane `c^T x = value`.
fn optimal_face(p: &Polyhedron, c: &[Rat], value: &Rat) -> Result<Polyhedron> {
    if ratlin::is_zero_vec(c) {
        return Ok(p.clone());
    }
    let mut eq: RatMat = p.eq_matrix().clone();
    eq.push_row(c);
    let mut rhs = p.eq_rhs().to_vec();
    rhs.push(value.clone());
    Polyhedron::new(eq, rhs, p.ineq_matrix().clone(), p.ineq_rhs().to_vec())
}
