//! Circuit walks on polyhedra in exact rational arithmetic.
//!
//! The crate covers the pieces needed to study circuit augmentation for
//! linear programs `min c^T x` over `P = {x : A x = b, B x <= d}`:
//!
//! - [`ratlin`]: rationals, vectors, matrices, rank, kernels.
//! - [`polyhedron`]: the feasible region, feasibility and maximal steps.
//! - [`lp`]: a Bland-rule simplex returning vertices, plus uniqueness checks.
//! - [`circuits`]: the lifted-cone extreme-ray test and full enumeration.
//! - [`conformal`]: sign-compatible circuit decompositions.
//! - [`ddstep`]: deepest, approximate and steepest descent steps and augmentation.
//! - [`ocnp`]: deciding whether the optimum is one circuit step away.
//! - [`reductions`]: longest-cycle instances and brute-force cycle oracles.
//!
//! [`io`] holds the text formats and [`cli`] the command-line front end.

pub mod circuits;
pub mod cli;
pub mod conformal;
pub mod ddstep;
pub mod error;
pub mod gen;
pub mod io;
pub mod lp;
pub mod ocnp;
pub mod polyhedron;
pub mod ratlin;
pub mod reductions;

pub use error::{Error, Result};

/// Cap on the work units spent by exponential routines (circuit and cycle
/// enumeration). Exceeding it returns [`Error::WorkBudget`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct WorkBudget(pub u64);

impl Default for WorkBudget {
    fn default() -> Self {
        WorkBudget(5_000_000)
    }
}
