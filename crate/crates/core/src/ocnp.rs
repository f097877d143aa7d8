//! Optimal circuit-neighbor decision for LPs whose optimum is unique.
//!
//! With a unique optimum `x*` there is exactly one candidate, so the question
//! reduces to whether `x* - x0` is a circuit direction, which the extreme-ray
//! test on the lifted cone decides. Uniqueness is checked, never assumed: if
//! it fails the verdict is [`OcnpVerdict::NotUnique`].

use crate::circuits;
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome, UniquenessReport};
use crate::polyhedron::Polyhedron;
use crate::ratlin::{self, Rat, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OcnpVerdict {
    /// `x0` is the unique optimum.
    AlreadyOptimal,
    CircuitNeighbor { xstar: RatVec },
    NotCircuitNeighbor { xstar: RatVec },
    NotUnique { xstar: RatVec, report: UniquenessReport },
}

impl OcnpVerdict {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            OcnpVerdict::CircuitNeighbor { .. } => 0,
            OcnpVerdict::NotCircuitNeighbor { .. } => 1,
            OcnpVerdict::AlreadyOptimal => 2,
            OcnpVerdict::NotUnique { .. } => 3,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            OcnpVerdict::CircuitNeighbor { .. } => "circuit-neighbor",
            OcnpVerdict::NotCircuitNeighbor { .. } => "not-circuit-neighbor",
            OcnpVerdict::AlreadyOptimal => "already-optimal",
            OcnpVerdict::NotUnique { .. } => "not-unique",
        }
    }
}

pub fn decide_ocnp(p: &Polyhedron, c: &[Rat], x0: &[Rat]) -> Result<OcnpVerdict> {
    p.check_point(c, "objective")?;
    p.check_point(x0, "start point")?;
    if !p.is_feasible(x0) {
        return Err(Error::usage("start point is infeasible"));
    }
    let xstar = match lp::solve_lp(p, c)? {
        LpOutcome::Optimal { vertex, .. } => vertex,
        LpOutcome::Unbounded { direction } => return Err(Error::UnboundedLp { direction }),
        LpOutcome::Infeasible => return Err(Error::InfeasibleLp),
    };
    let report = lp::verify_unique(p, c, &xstar)?;
    if !report.unique {
        return Ok(OcnpVerdict::NotUnique { xstar, report });
    }
    let d = ratlin::sub(&xstar, x0);
    if ratlin::is_zero_vec(&d) {
        return Ok(OcnpVerdict::AlreadyOptimal);
    }
    Ok(if circuits::is_circuit_direction(p, &d) {
        OcnpVerdict::CircuitNeighbor { xstar }
    } else {
        OcnpVerdict::NotCircuitNeighbor { xstar }
    })
}
