//! Longest-cycle instances turned into circulation LPs.
//!
//! Arc `i` (1-based) of an unweighted digraph gets cost `1 + 2^{-i}`. With
//! these costs every cycle costs at least its arc count and less than one
//! more, and no two arc sets share a cost. The circulation LP
//! `min -c^T x  s.t.  A x = 0, 0 <= x <= 1` over the incidence matrix `A` then
//! has a unique optimum, and a deepest-descent step from `x = 0` is the
//! indicator vector of a maximum-cost directed cycle.

mod cycles;
mod digraph;

pub use cycles::{directed_cycles, undirected_cycle_vectors};
pub use digraph::Digraph;

use num_traits::{One, Zero};

use crate::circuits;
use crate::ddstep::{self, StepOutcome};
use crate::error::{Error, Result};
use crate::polyhedron::{LpInstance, Polyhedron, StepLength};
use crate::ratlin::{self, Rat, RatMat, RatVec};
use crate::WorkBudget;

/// Replaces unit (or absent) costs by `1 + 2^{-i}` for arc index `i = 1..m`.
pub fn perturb_costs(g: &Digraph) -> Result<Digraph> {
    if let Some(costs) = g.costs() {
        if costs.iter().any(|c| !c.is_one()) {
            return Err(Error::usage("cost perturbation expects an unweighted or unit-cost digraph"));
        }
    }
    let costs = (1..=g.arc_count())
        .map(|i| Rat::one() + ratlin::inverse_power_of_two(i))
        .collect();
    g.clone().with_costs(costs)
}

/// Circulation LP built from a digraph, together with its start point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionInstance {
    pub lp: LpInstance,
    /// All-zero flow.
    pub x0: RatVec,
    /// The source digraph with perturbed costs.
    pub graph: Digraph,
    /// LP coordinate `e` is the flow on arc `arc_index_map[e]` = (tail, head).
    pub arc_index_map: Vec<(usize, usize)>,
}

/// `{x : A x = 0, 0 <= x <= 1}` over the incidence matrix of `g`.
pub fn circulation_polytope(g: &Digraph) -> Polyhedron {
    let m = g.arc_count();
    let ineq = RatMat::identity(m).vstack(&RatMat::identity(m).negated());
    let mut d = vec![Rat::one(); m];
    d.extend(ratlin::zeros(m));
    Polyhedron::new(g.incidence_matrix(), ratlin::zeros(g.nodes()), ineq, d).expect("B = [I; -I] has full column rank")
}

pub fn build_reduction(g: &Digraph) -> Result<ReductionInstance> {
    let graph = perturb_costs(g)?;
    let polyhedron = circulation_polytope(&graph);
    let objective = ratlin::neg(graph.costs().expect("perturbed graph has costs"));
    Ok(ReductionInstance {
        lp: LpInstance::new(polyhedron, objective)?,
        x0: ratlin::zeros(g.arc_count()),
        arc_index_map: g.arcs().to_vec(),
        graph,
    })
}

/// Maximum-cost simple directed cycle as (sorted arc indices, cost). Uses
/// unit costs for unweighted graphs; ties go to the lexicographically
/// smallest arc set.
pub fn longest_cycle_oracle(g: &Digraph, budget: WorkBudget) -> Result<Option<(Vec<usize>, Rat)>> {
    let costs = g.costs_or_unit();
    let mut best: Option<(Vec<usize>, Rat)> = None;
    for cycle in directed_cycles(g, budget)? {
        let cost: Rat = cycle.iter().map(|&a| costs[a].clone()).sum();
        let better = match &best {
            None => true,
            Some((arcs, c)) => cost > *c || (cost == *c && cycle < *arcs),
        };
        if better {
            best = Some((cycle, cost));
        }
    }
    Ok(best)
}

/// Outcome of checking one digraph against the dd-step/longest-cycle
/// correspondence.
#[derive(Clone, Debug)]
pub struct CorrespondenceReport {
    pub step: StepOutcome,
    pub longest: Option<(Vec<usize>, Rat)>,
    /// Every improving circuit with a positive step from zero is a 0/1 vector
    /// with maximal step length exactly 1.
    pub improving_circuits_are_unit: bool,
    pub holds: bool,
}

pub fn correspondence_report(g: &Digraph, budget: WorkBudget) -> Result<CorrespondenceReport> {
    let inst = build_reduction(g)?;
    let p = &inst.lp.polyhedron;
    let c = &inst.lp.objective;
    let all = circuits::enumerate_circuits(p, budget)?;
    let step = ddstep::exact_dd_step_among(p, c, &inst.x0, &all)?;
    let longest = longest_cycle_oracle(&inst.graph, budget)?;

    let mut improving_circuits_are_unit = true;
    for g in all {
        for oriented in [g.clone(), g.negated()] {
            let dir = oriented.direction();
            if ratlin::dot(c, &dir) >= Rat::zero() {
                continue;
            }
            match p.max_step_unchecked(&inst.x0, &dir) {
                StepLength::Finite(beta) if beta.is_zero() => {}
                StepLength::Finite(beta) => {
                    let zero_one = dir.iter().all(|x| x.is_zero() || x.is_one());
                    improving_circuits_are_unit &= zero_one && beta.is_one();
                }
                StepLength::Unbounded => improving_circuits_are_unit = false,
            }
        }
    }

    let matches = match (&step, &longest) {
        (StepOutcome::Optimal, None) => true,
        (StepOutcome::Step(s), Some((arcs, cost))) => {
            let mut indicator = ratlin::zeros(inst.x0.len());
            for &a in arcs {
                indicator[a] = Rat::one();
            }
            s.circuit.direction() == indicator && s.alpha.is_one() && s.improvement == *cost
        }
        _ => false,
    };
    Ok(CorrespondenceReport {
        holds: matches && improving_circuits_are_unit,
        step,
        longest,
        improving_circuits_are_unit,
    })
}

/// Does the exact dd-step from zero on the reduction LP pick the oracle's
/// maximum-cost cycle with step length 1 and improvement equal to its cost?
pub fn verify_correspondence(g: &Digraph, budget: WorkBudget) -> Result<bool> {
    Ok(correspondence_report(g, budget)?.holds)
}
