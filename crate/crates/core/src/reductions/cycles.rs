//! Brute-force cycle enumeration on small digraphs.
//!
//! Every cycle is found exactly once, rooted at its smallest arc index and
//! traversed so that this arc is used forwards.

use crate::error::{Error, Result};
use crate::WorkBudget;

use super::Digraph;

struct Search<'a> {
    g: &'a Digraph,
    undirected: bool,
    budget: u64,
    work: u64,
    visited: Vec<bool>,
    /// Current path as (arc, +1 forward / -1 backward).
    path: Vec<(usize, i8)>,
    out: Vec<Vec<(usize, i8)>>,
}

impl Search<'_> {
    fn extend(&mut self, root: usize, start: usize, at: usize) -> Result<()> {
        for f in root + 1..self.g.arc_count() {
            let (t, h) = self.g.arcs()[f];
            let (next, dir) = if t == at {
                (h, 1)
            } else if self.undirected && h == at {
                (t, -1)
            } else {
                continue;
            };
            self.work += 1;
            if self.work > self.budget {
                return Err(Error::WorkBudget {
                    what: format!(
                        "cycle enumeration on {} nodes and {} arcs",
                        self.g.nodes(),
                        self.g.arc_count()
                    ),
                    budget: self.budget,
                });
            }
            if next == start {
                let mut cycle = self.path.clone();
                cycle.push((f, dir));
                self.out.push(cycle);
            } else if !self.visited[next] {
                self.visited[next] = true;
                self.path.push((f, dir));
                self.extend(root, start, next)?;
                self.path.pop();
                self.visited[next] = false;
            }
        }
        Ok(())
    }
}

fn enumerate(g: &Digraph, undirected: bool, budget: WorkBudget) -> Result<Vec<Vec<(usize, i8)>>> {
    let mut s = Search {
        g,
        undirected,
        budget: budget.0,
        work: 0,
        visited: vec![false; g.nodes()],
        path: Vec::new(),
        out: Vec::new(),
    };
    for root in 0..g.arc_count() {
        let (t, h) = g.arcs()[root];
        s.visited[t] = true;
        s.visited[h] = true;
        s.path.push((root, 1));
        s.extend(root, t, h)?;
        s.path.pop();
        s.visited[t] = false;
        s.visited[h] = false;
    }
    Ok(s.out)
}

/// Simple directed cycles, each as its sorted list of arc indices.
pub fn directed_cycles(g: &Digraph, budget: WorkBudget) -> Result<Vec<Vec<usize>>> {
    Ok(enumerate(g, false, budget)?
        .into_iter()
        .map(|c| {
            let mut arcs: Vec<usize> = c.into_iter().map(|(a, _)| a).collect();
            arcs.sort_unstable();
            arcs
        })
        .collect())
}

/// Simple cycles of the underlying undirected multigraph as signed arc
/// indicator vectors: `+1` for arcs traversed along their direction, `-1` for
/// arcs traversed against it. The smallest arc always carries `+1`.
pub fn undirected_cycle_vectors(g: &Digraph, budget: WorkBudget) -> Result<Vec<Vec<i8>>> {
    Ok(enumerate(g, true, budget)?
        .into_iter()
        .map(|c| {
            let mut v = vec![0i8; g.arc_count()];
            for (a, dir) in c {
                v[a] = dir;
            }
            v
        })
        .collect())
}
