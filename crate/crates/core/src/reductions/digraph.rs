use num_traits::One;

use crate::error::{Error, Result};
use crate::ratlin::{self, Rat, RatMat, RatVec};

/// Directed multigraph without self-loops. Nodes are `0..nodes`; arc `i` is
/// `arcs[i]`, and that index is what cost perturbation and the LP coordinates
/// refer to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    nodes: usize,
    arcs: Vec<(usize, usize)>,
    costs: Option<RatVec>,
}

impl Digraph {
    pub fn new(nodes: usize, arcs: Vec<(usize, usize)>) -> Result<Self> {
        for (i, &(t, h)) in arcs.iter().enumerate() {
            if t >= nodes || h >= nodes {
                return Err(Error::usage(format!("arc {} ({t} -> {h}) leaves the node range 0..{nodes}", i + 1)));
            }
            if t == h {
                return Err(Error::usage(format!("arc {} is a self-loop at node {t}", i + 1)));
            }
        }
        Ok(Digraph {
            nodes,
            arcs,
            costs: None,
        })
    }

    pub fn with_costs(mut self, costs: RatVec) -> Result<Self> {
        if costs.len() != self.arcs.len() {
            return Err(Error::Dimension(format!(
                "{} costs for {} arcs",
                costs.len(),
                self.arcs.len()
            )));
        }
        self.costs = Some(costs);
        Ok(self)
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn costs(&self) -> Option<&[Rat]> {
        self.costs.as_deref()
    }

    /// Explicit costs, or 1 per arc when the graph is unweighted.
    pub fn costs_or_unit(&self) -> RatVec {
        self.costs
            .clone()
            .unwrap_or_else(|| vec![Rat::one(); self.arcs.len()])
    }

    /// Node-arc incidence matrix: `+1` at the tail and `-1` at the head of
    /// every arc.
    pub fn incidence_matrix(&self) -> RatMat {
        let mut a = RatMat::zeros(self.nodes, self.arcs.len());
        for (e, &(t, h)) in self.arcs.iter().enumerate() {
            a.set(t, e, ratlin::int(1));
            a.set(h, e, ratlin::int(-1));
        }
        a
    }
}
