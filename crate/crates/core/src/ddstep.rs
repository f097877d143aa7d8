//! Circuit steps: exact deepest descent by enumeration, the LP-based
//! approximation through a conformal decomposition, steepest descent as a
//! comparator, and the augmentation loop that chains them.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::circuits::{self, Circuit};
use crate::conformal;
use crate::error::{Error, Result};
use crate::lp::{self, LpOutcome};
use crate::polyhedron::{Polyhedron, StepLength};
use crate::ratlin::{self, Rat, RatVec};
use crate::WorkBudget;

/// A maximal feasible step `alpha * g` along an improving circuit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DdStep {
    pub circuit: Circuit,
    pub alpha: Rat,
    /// `-c^T (alpha g)`, strictly positive.
    pub improvement: Rat,
}

impl DdStep {
    pub fn displacement(&self) -> RatVec {
        ratlin::scale(&self.alpha, &self.circuit.direction())
    }

    pub fn apply(&self, x0: &[Rat]) -> RatVec {
        ratlin::add(x0, &self.displacement())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepOutcome {
    Step(DdStep),
    /// No feasible improving circuit step exists.
    Optimal,
    /// Some improving circuit can be followed forever.
    UnboundedImprovement(Circuit),
}

impl StepOutcome {
    pub fn step(&self) -> Option<&DdStep> {
        match self {
            StepOutcome::Step(s) => Some(s),
            _ => None,
        }
    }

    /// Improvement of the step, zero for `Optimal`.
    pub fn improvement(&self) -> Option<Rat> {
        match self {
            StepOutcome::Step(s) => Some(s.improvement.clone()),
            StepOutcome::Optimal => Some(Rat::zero()),
            StepOutcome::UnboundedImprovement(_) => None,
        }
    }
}

/// Which circuit a step follows.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepRule {
    /// Deepest descent, by enumerating every circuit.
    Exact,
    /// Best term of a conformal decomposition of `x* - x0`, extended to its
    /// maximal step. Within a factor `n - rank(A)` of deepest descent.
    Approx,
    /// Minimizes `c^T g / |g|_1`.
    Steepest,
}

impl fmt::Display for StepRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StepRule::Exact => "exact",
            StepRule::Approx => "approx",
            StepRule::Steepest => "steepest",
        })
    }
}

impl FromStr for StepRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "exact" => Ok(StepRule::Exact),
            "approx" => Ok(StepRule::Approx),
            "steepest" => Ok(StepRule::Steepest),
            other => Err(format!("unknown step rule `{other}` (expected exact, approx or steepest)")),
        }
    }
}

fn check_start(p: &Polyhedron, c: &[Rat], x0: &[Rat]) -> Result<()> {
    p.check_point(c, "objective")?;
    p.check_point(x0, "start point")?;
    if !p.is_feasible(x0) {
        return Err(Error::usage("start point is infeasible"));
    }
    Ok(())
}

/// Improving oriented circuits in canonical order: each enumerated circuit,
/// then its negation, keeping those with `c^T g < 0`.
fn improving_circuits(c: &[Rat], circuits: &[Circuit]) -> Vec<(Circuit, Rat)> {
    let mut out = Vec::new();
    for g in circuits {
        for oriented in [g.clone(), g.negated()] {
            let slope = ratlin::dot(c, &oriented.direction());
            if slope.is_negative() {
                out.push((oriented, slope));
            }
        }
    }
    out
}

/// Deepest-descent step by exhaustive scan over all circuits. Ties keep the
/// first circuit in canonical order.
pub fn exact_dd_step(p: &Polyhedron, c: &[Rat], x0: &[Rat], budget: WorkBudget) -> Result<StepOutcome> {
    check_start(p, c, x0)?;
    let all = circuits::enumerate_circuits(p, budget)?;
    Ok(deepest_among(p, c, x0, &all))
}

/// Deepest-descent step over a precomputed circuit list, which must be the
/// full canonical enumeration of `p` for the result to be exact.
pub fn exact_dd_step_among(p: &Polyhedron, c: &[Rat], x0: &[Rat], circuits: &[Circuit]) -> Result<StepOutcome> {
    check_start(p, c, x0)?;
    Ok(deepest_among(p, c, x0, circuits))
}

fn deepest_among(p: &Polyhedron, c: &[Rat], x0: &[Rat], circuits: &[Circuit]) -> StepOutcome {
    let mut best: Option<DdStep> = None;
    for (g, slope) in improving_circuits(c, circuits) {
        let alpha = match p.max_step_unchecked(x0, &g.direction()) {
            StepLength::Unbounded => return StepOutcome::UnboundedImprovement(g),
            StepLength::Finite(beta) if beta.is_positive() => beta,
            StepLength::Finite(_) => continue,
        };
        let improvement = -(&alpha * &slope);
        if best.as_ref().is_none_or(|b| improvement > b.improvement) {
            best = Some(DdStep {
                circuit: g,
                alpha,
                improvement,
            });
        }
    }
    best.map_or(StepOutcome::Optimal, StepOutcome::Step)
}

/// Steepest-descent step: the improving circuit with a positive feasible
/// step minimizing `c^T g / |g|_1`, taken at maximal length.
pub fn steepest_descent_step(p: &Polyhedron, c: &[Rat], x0: &[Rat], budget: WorkBudget) -> Result<StepOutcome> {
    check_start(p, c, x0)?;
    let mut best: Option<(Rat, Circuit, StepLength)> = None;
    let all = circuits::enumerate_circuits(p, budget)?;
    for (g, slope) in improving_circuits(c, &all) {
        let step = p.max_step_unchecked(x0, &g.direction());
        if !step.is_positive() {
            continue;
        }
        let ratio = slope / ratlin::from_bigint(g.l1_norm());
        if best.as_ref().is_none_or(|(r, _, _)| ratio < *r) {
            best = Some((ratio, g, step));
        }
    }
    Ok(match best {
        None => StepOutcome::Optimal,
        Some((_, g, StepLength::Unbounded)) => StepOutcome::UnboundedImprovement(g),
        Some((_, g, StepLength::Finite(alpha))) => {
            let improvement = -(&alpha * ratlin::dot(c, &g.direction()));
            StepOutcome::Step(DdStep {
                circuit: g,
                alpha,
                improvement,
            })
        }
    })
}

/// Approximate deepest-descent step from an LP optimum `x*`: decompose
/// `x* - x0` conformally, keep the term with the most negative `c^T(alpha g)`
/// and extend it to the maximal feasible step along its circuit. Never
/// enumerates circuits.
pub fn approx_dd_step(p: &Polyhedron, c: &[Rat], x0: &[Rat]) -> Result<StepOutcome> {
    check_start(p, c, x0)?;
    let xstar = match lp::solve_lp(p, c)? {
        LpOutcome::Optimal { vertex, .. } => vertex,
        LpOutcome::Unbounded { direction } => return Err(Error::UnboundedLp { direction }),
        LpOutcome::Infeasible => unreachable!("start point is feasible"),
    };
    approx_dd_step_towards(p, c, x0, &xstar)
}

/// The approximation step given an already known optimum.
pub fn approx_dd_step_towards(p: &Polyhedron, c: &[Rat], x0: &[Rat], xstar: &[Rat]) -> Result<StepOutcome> {
    if ratlin::dot(c, xstar) >= ratlin::dot(c, x0) {
        return Ok(StepOutcome::Optimal);
    }
    let sum = conformal::decompose(p, &ratlin::sub(xstar, x0))?;
    let best = sum
        .terms
        .iter()
        .map(|t| (ratlin::dot(c, &ratlin::scale(&t.alpha, &t.circuit.direction())), t))
        .reduce(|a, b| if b.0 < a.0 { b } else { a })
        .expect("nonzero target has at least one term")
        .1;
    let g = best.circuit.clone();
    let alpha = match p.max_step_unchecked(x0, &g.direction()) {
        StepLength::Finite(beta) => beta,
        StepLength::Unbounded => return Ok(StepOutcome::UnboundedImprovement(g)),
    };
    debug_assert!(alpha >= best.alpha);
    let improvement = -(&alpha * ratlin::dot(c, &g.direction()));
    Ok(StepOutcome::Step(DdStep {
        circuit: g,
        alpha,
        improvement,
    }))
}

pub fn step(p: &Polyhedron, c: &[Rat], x0: &[Rat], rule: StepRule, budget: WorkBudget) -> Result<StepOutcome> {
    match rule {
        StepRule::Exact => exact_dd_step(p, c, x0, budget),
        StepRule::Approx => approx_dd_step(p, c, x0),
        StepRule::Steepest => steepest_descent_step(p, c, x0, budget),
    }
}

/// Steps and iterates of an augmentation run. `iterates[0]` is the start
/// point and `iterates[i + 1] = iterates[i] + steps[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AugmentationTrace {
    pub rule: StepRule,
    /// `n - rank(A)`, the approximation factor guaranteed in approx mode.
    pub approx_factor: usize,
    pub steps: Vec<DdStep>,
    pub iterates: Vec<RatVec>,
}

impl AugmentationTrace {
    pub fn last(&self) -> &RatVec {
        self.iterates.last().expect("trace holds the start point")
    }
}

#[derive(Clone, Copy, Debug)]
pub struct AugmentOptions {
    pub max_iterations: usize,
    pub budget: WorkBudget,
}

impl Default for AugmentOptions {
    fn default() -> Self {
        Self {
            max_iterations: 10_000,
            budget: WorkBudget::default(),
        }
    }
}

/// Repeats the chosen step rule until no improving step is left.
pub fn augment(p: &Polyhedron, c: &[Rat], x0: &[Rat], rule: StepRule, opts: AugmentOptions) -> Result<AugmentationTrace> {
    check_start(p, c, x0)?;
    let mut trace = AugmentationTrace {
        rule,
        approx_factor: p.dim() - ratlin::rank(p.eq_matrix()),
        steps: Vec::new(),
        iterates: vec![x0.to_vec()],
    };
    loop {
        let x = trace.last().clone();
        match step(p, c, &x, rule, opts.budget)? {
            StepOutcome::Optimal => return Ok(trace),
            StepOutcome::UnboundedImprovement(g) => {
                return Err(Error::UnboundedLp { direction: g.direction() });
            }
            StepOutcome::Step(s) => {
                if trace.steps.len() == opts.max_iterations {
                    return Err(Error::IterationCap {
                        cap: opts.max_iterations,
                        trace: Box::new(trace),
                    });
                }
                let next = s.apply(&x);
                trace.steps.push(s);
                trace.iterates.push(next);
            }
        }
    }
}
