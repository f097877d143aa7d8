//! Seeded random instances and small exhaustive digraph catalogs for tests,
//! benchmarks and the acceptance suite. All randomness flows through a caller
//! supplied [`ChaCha8Rng`], so equal seeds give equal instances on every
//! platform.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::lp::{self, LpOutcome};
use crate::polyhedron::{LpInstance, Polyhedron};
use crate::ratlin::{self, Rat, RatMat, RatVec};
use crate::reductions::Digraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// `l <= x <= u`.
    Box,
    /// Capacitated circulations `A x = 0, 0 <= x <= u` on a random digraph.
    Circulation,
    /// Interval (consecutive-ones) equalities inside a box.
    TuLike,
    /// Small integer equalities inside a box plus one random cut.
    General,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Box, Family::Circulation, Family::TuLike, Family::General];

    pub fn name(self) -> &'static str {
        match self {
            Family::Box => "box",
            Family::Circulation => "circulation",
            Family::TuLike => "tu-like",
            Family::General => "general",
        }
    }
}

/// A bounded, feasible, pointed LP with a feasible start point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratedInstance {
    pub family: Family,
    pub lp: LpInstance,
    pub x0: RatVec,
}

fn small_rat(rng: &mut ChaCha8Rng, lo: i64, hi: i64) -> Rat {
    let den = [1, 1, 1, 2, 3][rng.gen_range(0..5)];
    ratlin::frac(rng.gen_range(lo * den..=hi * den), den)
}

fn objective(rng: &mut ChaCha8Rng, n: usize) -> RatVec {
    loop {
        let c: RatVec = (0..n).map(|_| small_rat(rng, -4, 4)).collect();
        if !ratlin::is_zero_vec(&c) {
            return c;
        }
    }
}

fn box_rows(n: usize) -> RatMat {
    RatMat::identity(n).vstack(&RatMat::identity(n).negated())
}

fn box_rhs(lower: &[Rat], upper: &[Rat]) -> RatVec {
    let mut d = upper.to_vec();
    d.extend(ratlin::neg(lower));
    d
}

fn random_vertex(rng: &mut ChaCha8Rng, p: &Polyhedron) -> RatVec {
    let c = objective(rng, p.dim());
    match lp::solve_lp(p, &c).expect("generated polyhedra are pointed") {
        LpOutcome::Optimal { vertex, .. } => vertex,
        other => panic!("generated polyhedron is bounded and feasible, got {other:?}"),
    }
}

/// A vertex, the midpoint of two vertices, or `fallback` (known feasible).
fn start_point(rng: &mut ChaCha8Rng, p: &Polyhedron, fallback: RatVec) -> RatVec {
    match rng.gen_range(0..3) {
        0 => random_vertex(rng, p),
        1 => {
            let u = random_vertex(rng, p);
            let v = random_vertex(rng, p);
            ratlin::scale(&ratlin::frac(1, 2), &ratlin::add(&u, &v))
        }
        _ => fallback,
    }
}

fn finish(rng: &mut ChaCha8Rng, family: Family, p: Polyhedron, fallback: RatVec) -> GeneratedInstance {
    let x0 = start_point(rng, &p, fallback);
    debug_assert!(p.is_feasible(&x0));
    let c = objective(rng, p.dim());
    GeneratedInstance {
        family,
        lp: LpInstance::new(p, c).expect("objective matches dimension"),
        x0,
    }
}

pub fn random_box(rng: &mut ChaCha8Rng, n: usize) -> GeneratedInstance {
    let lower: RatVec = (0..n).map(|_| ratlin::int(rng.gen_range(-2..=1))).collect();
    let upper: RatVec = lower.iter().map(|l| l + small_rat(rng, 1, 3)).collect();
    let inside: RatVec = lower
        .iter()
        .zip(&upper)
        .map(|(l, u)| l + (u - l) * ratlin::frac(rng.gen_range(0..=4), 4))
        .collect();
    let p = Polyhedron::boxed(&lower, &upper).expect("box is pointed");
    finish(rng, Family::Box, p, inside)
}

/// Circulation on a random multidigraph with `nodes` nodes and at most
/// `max_arcs` arcs, capacities in {1, 2}.
pub fn random_circulation(rng: &mut ChaCha8Rng, nodes: usize, max_arcs: usize) -> GeneratedInstance {
    let g = loop {
        let g = random_multidigraph(rng, nodes, max_arcs);
        if g.arc_count() > 0 {
            break g;
        }
    };
    let m = g.arc_count();
    let upper: RatVec = (0..m).map(|_| ratlin::int(rng.gen_range(1..=2))).collect();
    let p = Polyhedron::new(g.incidence_matrix(), ratlin::zeros(nodes), box_rows(m), box_rhs(&ratlin::zeros(m), &upper))
        .expect("box rows make the polyhedron pointed");
    finish(rng, Family::Circulation, p, ratlin::zeros(m))
}

/// Box `0 <= x <= u` with up to two consecutive-ones equality rows, right-hand
/// sides taken from a random integer point.
pub fn random_tu_like(rng: &mut ChaCha8Rng, n: usize) -> GeneratedInstance {
    let upper: RatVec = (0..n).map(|_| ratlin::int(rng.gen_range(1..=2))).collect();
    let point: RatVec = upper.iter().map(|u| ratlin::int(rng.gen_range(0..=small_int(u)))).collect();
    let m_a = rng.gen_range(0..=2.min(n - 1));
    let mut a = RatMat::zeros(0, n);
    for _ in 0..m_a {
        let s = rng.gen_range(0..n);
        let t = rng.gen_range(s..n);
        let row: RatVec = (0..n).map(|j| ratlin::int(i64::from(s <= j && j <= t))).collect();
        a.push_row(&row);
    }
    let b = a.mul_vec(&point);
    let p = Polyhedron::new(a, b, box_rows(n), box_rhs(&ratlin::zeros(n), &upper)).expect("box rows make the polyhedron pointed");
    finish(rng, Family::TuLike, p, point)
}

/// Box `0 <= x <= u` with up to two equality rows of small integers and one
/// random cut, all satisfied by a random integer point.
pub fn random_general(rng: &mut ChaCha8Rng, n: usize) -> GeneratedInstance {
    let upper: RatVec = (0..n).map(|_| ratlin::int(rng.gen_range(1..=3))).collect();
    let point: RatVec = upper.iter().map(|u| ratlin::int(rng.gen_range(0..=small_int(u)))).collect();
    let m_a = rng.gen_range(0..=2.min(n - 1));
    let mut a = RatMat::zeros(0, n);
    for _ in 0..m_a {
        let row: RatVec = (0..n).map(|_| ratlin::int(rng.gen_range(-2..=2))).collect();
        if !ratlin::is_zero_vec(&row) {
            a.push_row(&row);
        }
    }
    let b = a.mul_vec(&point);
    let mut ineq = box_rows(n);
    let mut d = box_rhs(&ratlin::zeros(n), &upper);
    let cut: RatVec = (0..n).map(|_| ratlin::int(rng.gen_range(-2..=2))).collect();
    if !ratlin::is_zero_vec(&cut) {
        d.push(ratlin::dot(&cut, &point) + ratlin::int(rng.gen_range(0..=2)));
        ineq.push_row(&cut);
    }
    let p = Polyhedron::new(a, b, ineq, d).expect("box rows make the polyhedron pointed");
    finish(rng, Family::General, p, point)
}

fn small_int(x: &Rat) -> i64 {
    x.to_integer().try_into().expect("small generator bound")
}

/// Instance of `family` with dimension at most `max_dim` (at least 2).
pub fn random_instance(rng: &mut ChaCha8Rng, family: Family, max_dim: usize) -> GeneratedInstance {
    let max_dim = max_dim.max(2);
    match family {
        Family::Box => {
            let n = rng.gen_range(1..=max_dim);
            random_box(rng, n)
        }
        Family::Circulation => {
            let nodes = rng.gen_range(2..=4);
            random_circulation(rng, nodes, max_dim)
        }
        Family::TuLike => {
            let n = rng.gen_range(2..=max_dim);
            random_tu_like(rng, n)
        }
        Family::General => {
            let n = rng.gen_range(2..=max_dim);
            random_general(rng, n)
        }
    }
}

/// Simple digraph: distinct ordered pairs, random count up to `max_arcs`,
/// random arc order.
pub fn random_digraph(rng: &mut ChaCha8Rng, nodes: usize, max_arcs: usize) -> Digraph {
    let mut pairs = ordered_pairs(nodes);
    pairs.shuffle(rng);
    let k = rng.gen_range(0..=max_arcs.min(pairs.len()));
    pairs.truncate(k);
    Digraph::new(nodes, pairs).expect("pairs avoid self-loops")
}

/// Each ordered pair becomes an arc with probability `num / den`; arcs come in
/// lexicographic pair order.
pub fn random_digraph_with_density(rng: &mut ChaCha8Rng, nodes: usize, num: u64, den: u64) -> Digraph {
    let arcs = ordered_pairs(nodes).into_iter().filter(|_| rng.gen_range(0..den) < num).collect();
    Digraph::new(nodes, arcs).expect("pairs avoid self-loops")
}

/// Arcs drawn independently, so parallel arcs may occur.
pub fn random_multidigraph(rng: &mut ChaCha8Rng, nodes: usize, max_arcs: usize) -> Digraph {
    assert!(nodes >= 2, "a loopless arc needs two nodes");
    let k = rng.gen_range(0..=max_arcs);
    let arcs = (0..k)
        .map(|_| {
            let t = rng.gen_range(0..nodes);
            let h = (t + rng.gen_range(1..nodes)) % nodes;
            (t, h)
        })
        .collect();
    Digraph::new(nodes, arcs).expect("arcs avoid self-loops")
}

/// Complete digraph with arcs in lexicographic pair order.
pub fn complete_digraph(nodes: usize) -> Digraph {
    Digraph::new(nodes, ordered_pairs(nodes)).expect("pairs avoid self-loops")
}

fn ordered_pairs(nodes: usize) -> Vec<(usize, usize)> {
    (0..nodes)
        .flat_map(|t| (0..nodes).filter(move |&h| h != t).map(move |h| (t, h)))
        .collect()
}

/// Bit-mask encoding of simple digraphs on a fixed node set, with a canonical
/// form under node relabeling.
struct MaskSpace {
    nodes: usize,
    pairs: Vec<(usize, usize)>,
    index: Vec<Vec<usize>>,
}

impl MaskSpace {
    fn new(nodes: usize) -> Self {
        let pairs = ordered_pairs(nodes);
        assert!(pairs.len() <= 64, "at most 8 nodes");
        let mut index = vec![vec![usize::MAX; nodes]; nodes];
        for (i, &(t, h)) in pairs.iter().enumerate() {
            index[t][h] = i;
        }
        MaskSpace { nodes, pairs, index }
    }

    fn relabel(&self, mask: u64, perm: &[usize]) -> u64 {
        let mut out = 0;
        for (i, &(t, h)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                out |= 1 << self.index[perm[t]][perm[h]];
            }
        }
        out
    }

    /// Minimum mask over relabelings that sort nodes by (out-degree,
    /// in-degree, 2-cycles). Those invariants are preserved by isomorphism, so
    /// isomorphic graphs share the same candidate set.
    fn canonical(&self, mask: u64) -> u64 {
        let n = self.nodes;
        let mut key = vec![(0usize, 0usize, 0usize); n];
        for (i, &(t, h)) in self.pairs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                key[t].0 += 1;
                key[h].1 += 1;
                if mask >> self.index[h][t] & 1 == 1 {
                    key[t].2 += 1;
                }
            }
        }
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| key[v]);
        let mut groups: Vec<Vec<usize>> = Vec::new();
        for &v in &order {
            match groups.last_mut() {
                Some(g) if key[g[0]] == key[v] => g.push(v),
                _ => groups.push(vec![v]),
            }
        }
        let mut perm = vec![0; n];
        let mut best = u64::MAX;
        self.search(mask, &mut groups, 0, 0, &mut perm, &mut best);
        best
    }

    fn search(&self, mask: u64, groups: &mut [Vec<usize>], gi: usize, pos: usize, perm: &mut [usize], best: &mut u64) {
        if gi == groups.len() {
            *best = (*best).min(self.relabel(mask, perm));
            return;
        }
        let len = groups[gi].len();
        heap_permutations(&mut groups[gi].clone(), len, &mut |members| {
            for (k, &v) in members.iter().enumerate() {
                perm[v] = pos + k;
            }
            self.search(mask, groups, gi + 1, pos + len, perm, best);
        });
    }

    fn digraph(&self, mask: u64) -> Digraph {
        let arcs = (0..self.pairs.len()).filter(|i| mask >> i & 1 == 1).map(|i| self.pairs[i]).collect();
        Digraph::new(self.nodes, arcs).expect("pairs avoid self-loops")
    }
}

fn heap_permutations(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize])) {
    if k <= 1 {
        visit(items);
        return;
    }
    for i in 0..k {
        heap_permutations(items, k - 1, visit);
        let j = if k.is_multiple_of(2) { i } else { 0 };
        items.swap(j, k - 1);
    }
}

/// One representative per isomorphism class of simple digraphs on exactly
/// `nodes` nodes with at most `max_arcs` arcs. Arcs of each representative are
/// in lexicographic pair order; the list is sorted by arc count, then mask.
pub fn all_digraphs_up_to_iso(nodes: usize, max_arcs: usize) -> Vec<Digraph> {
    let space = MaskSpace::new(nodes);
    let max_arcs = max_arcs.min(space.pairs.len());
    let mut out = vec![space.digraph(0)];
    let mut level = vec![0u64];
    for _ in 0..max_arcs {
        let mut next = HashSet::new();
        for &mask in &level {
            for i in 0..space.pairs.len() {
                if mask >> i & 1 == 0 {
                    next.insert(space.canonical(mask | 1 << i));
                }
            }
        }
        let mut next: Vec<u64> = next.into_iter().collect();
        next.sort_unstable();
        out.extend(next.iter().map(|&m| space.digraph(m)));
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn generated_instances_are_feasible_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..40 {
            let inst = random_instance(&mut rng, Family::ALL[i % 4], 6);
            assert!(inst.lp.polyhedron.is_pointed());
            assert!(inst.lp.polyhedron.is_feasible(&inst.x0));
            assert!(inst.lp.polyhedron.dim() <= 6);
            let out = lp::solve_lp(&inst.lp.polyhedron, &inst.lp.objective).unwrap();
            assert!(out.optimal().is_some(), "{:?}", inst.family);
        }
    }

    #[test]
    fn generators_are_deterministic() {
        let a = random_instance(&mut ChaCha8Rng::seed_from_u64(3), Family::General, 5);
        let b = random_instance(&mut ChaCha8Rng::seed_from_u64(3), Family::General, 5);
        assert_eq!(a, b);
        let g = random_digraph(&mut ChaCha8Rng::seed_from_u64(9), 5, 8);
        let h = random_digraph(&mut ChaCha8Rng::seed_from_u64(9), 5, 8);
        assert_eq!(g, h);
    }

    #[test]
    fn isomorphism_class_counts() {
        // known counts of unlabeled digraphs: 3 on 2 nodes, 16 on 3, 218 on 4
        assert_eq!(all_digraphs_up_to_iso(2, 2).len(), 3);
        assert_eq!(all_digraphs_up_to_iso(3, 6).len(), 16);
        assert_eq!(all_digraphs_up_to_iso(4, 12).len(), 218);
        // on 3 nodes with at most one arc: empty and a single arc
        assert_eq!(all_digraphs_up_to_iso(3, 1).len(), 2);
    }

    #[test]
    fn density_extremes() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert_eq!(random_digraph_with_density(&mut rng, 4, 1, 1).arc_count(), 12);
        assert_eq!(random_digraph_with_density(&mut rng, 4, 0, 1).arc_count(), 0);
    }
}
