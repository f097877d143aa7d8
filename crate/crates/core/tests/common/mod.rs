//! Brute-force oracles shared by the integration tests. They deliberately
//! avoid the library's algorithms: vertices come from trying every basis,
//! circuits from every row subset, cycles from every arc subset.

#![allow(dead_code)]

use std::collections::BTreeSet;

use circuitwalk::polyhedron::Polyhedron;
use circuitwalk::reductions::Digraph;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational as Q;
use num_traits::{One, Signed, Zero};

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Row echelon form by plain Gaussian elimination; returns pivot columns.
fn echelon(rows: &mut [Vec<Q>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| !rows[k][c].is_zero()) else {
            continue;
        };
        rows.swap(r, k);
        let lead = rows[r][c].clone();
        for x in rows[r].iter_mut() {
            *x = &*x / &lead;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let pivot_row = rows[r].clone();
                for (x, y) in rows[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(rows: &[Vec<Q>], cols: usize) -> usize {
    echelon(&mut rows.to_vec(), cols).len()
}

/// Unique solution of a square system, if the matrix is nonsingular.
pub fn solve_square(rows: &[Vec<Q>], rhs: &[Q]) -> Option<Vec<Q>> {
    let n = rows.len();
    let mut aug: Vec<Vec<Q>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut r = r.clone();
            r.push(b.clone());
            r
        })
        .collect();
    let pivots = echelon(&mut aug, n);
    if pivots.len() < n {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

/// Basis vector of a one-dimensional null space.
pub fn null_vector(rows: &[Vec<Q>], cols: usize) -> Option<Vec<Q>> {
    let mut m = rows.to_vec();
    let pivots = echelon(&mut m, cols);
    if pivots.len() + 1 != cols {
        return None;
    }
    let free = (0..cols).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![Q::zero(); cols];
    v[free] = Q::one();
    for (i, &p) in pivots.iter().enumerate() {
        v[p] = -m[i][free].clone();
    }
    Some(v)
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn subsets(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(n, k, i + 1, cur, f);
            cur.pop();
        }
    }
    go(n, k, 0, &mut Vec::new(), f);
}

type Rows = Vec<Vec<Q>>;

/// `(A, b, B, d)` as plain row lists.
pub fn rows_of(p: &Polyhedron) -> (Rows, Vec<Q>, Rows, Vec<Q>) {
    (
        p.eq_matrix().to_rows(),
        p.eq_rhs().to_vec(),
        p.ineq_matrix().to_rows(),
        p.ineq_rhs().to_vec(),
    )
}

pub fn feasible(p: &Polyhedron, x: &[Q]) -> bool {
    let (a, b, bm, d) = rows_of(p);
    a.iter().zip(&b).all(|(r, v)| dot(r, x) == *v) && bm.iter().zip(&d).all(|(r, v)| dot(r, x) <= *v)
}

/// Every vertex: all equalities plus `n - rank` inequalities tight, unique
/// solution, feasible.
pub fn vertices(p: &Polyhedron) -> Vec<Vec<Q>> {
    let n = p.dim();
    let (a, b, bm, d) = rows_of(p);
    let mut found = BTreeSet::new();
    let total = a.len() + bm.len();
    let all_rows: Vec<Vec<Q>> = a.iter().chain(&bm).cloned().collect();
    let all_rhs: Vec<Q> = b.iter().chain(&d).cloned().collect();
    subsets(total, n, &mut |s| {
        // feasibility afterwards enforces the equalities
        let rows: Vec<Vec<Q>> = s.iter().map(|&i| all_rows[i].clone()).collect();
        let rhs: Vec<Q> = s.iter().map(|&i| all_rhs[i].clone()).collect();
        if let Some(x) = solve_square(&rows, &rhs) {
            if feasible(p, &x) {
                found.insert(x);
            }
        }
    });
    found.into_iter().collect()
}

/// Minimum value and the vertices attaining it; `None` for an empty
/// polytope. Only valid for bounded polyhedra.
pub fn optimum(p: &Polyhedron, c: &[Q]) -> Option<(Q, Vec<Vec<Q>>)> {
    let vs = vertices(p);
    let best = vs.iter().map(|v| dot(c, v)).min()?;
    let at: Vec<Vec<Q>> = vs.into_iter().filter(|v| dot(c, v) == best).collect();
    Some((best, at))
}

/// Coprime integer vector with first nonzero entry positive.
pub fn normalize(v: &[Q]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    let mut out: Vec<BigInt> = ints.iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        out.iter_mut().for_each(|x| *x = -x.clone());
    }
    out
}

/// Circuits by definition: for every set of inequality rows whose stack with
/// `A` has rank `n - 1`, the one-dimensional kernel; kept if no other kernel
/// vector has a strictly smaller support of `B v`.
pub fn circuits(p: &Polyhedron) -> BTreeSet<Vec<BigInt>> {
    let n = p.dim();
    let (a, _, bm, _) = rows_of(p);
    let mut candidates = BTreeSet::new();
    for k in 0..=bm.len().min(n) {
        subsets(bm.len(), k, &mut |s| {
            let rows: Vec<Vec<Q>> = a.iter().cloned().chain(s.iter().map(|&i| bm[i].clone())).collect();
            if let Some(v) = null_vector(&rows, n) {
                candidates.insert(normalize(&v));
            }
        });
    }
    let support = |g: &Vec<BigInt>| -> BTreeSet<usize> {
        let v: Vec<Q> = g.iter().cloned().map(Q::from_integer).collect();
        (0..bm.len()).filter(|&j| !dot(&bm[j], &v).is_zero()).collect()
    };
    let supports: Vec<(Vec<BigInt>, BTreeSet<usize>)> = candidates.iter().map(|g| (g.clone(), support(g))).collect();
    supports
        .iter()
        .filter(|(_, s)| !s.is_empty() && !supports.iter().any(|(_, t)| t.len() < s.len() && t.is_subset(s) && !t.is_empty()))
        .map(|(g, _)| g.clone())
        .collect()
}

/// Is `v` a positive multiple of a circuit? `all` holds one sign-normalized
/// representative per pair.
pub fn is_circuit_direction(all: &BTreeSet<Vec<BigInt>>, v: &[Q]) -> bool {
    if v.iter().all(|x| x.is_zero()) {
        return false;
    }
    // circuits come in +- pairs, so the sign-normalized form decides
    all.contains(&normalize(v))
}

fn touched_connected(nodes: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        if p[x] != x {
            let r = find(p, p[x]);
            p[x] = r;
        }
        p[x]
    }
    for &(t, h) in edges {
        let (a, b) = (find(&mut parent, t), find(&mut parent, h));
        parent[a] = b;
    }
    let mut roots = BTreeSet::new();
    for &(t, _) in edges {
        roots.insert(find(&mut parent, t));
    }
    roots.len() == 1
}

/// Simple undirected cycles as signed arc vectors: the arc subset is
/// connected and every touched node has degree two. The sign is +1 for arcs
/// traversed tail to head when walking from the lowest arc forwards.
pub fn undirected_cycles(g: &Digraph) -> BTreeSet<Vec<i64>> {
    let m = g.arc_count();
    assert!(m <= 20, "arc-subset oracle is exponential");
    let arcs = g.arcs();
    let mut out = BTreeSet::new();
    for mask in 1u32..(1 << m) {
        let chosen: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let mut degree = vec![0; g.nodes()];
        for &i in &chosen {
            degree[arcs[i].0] += 1;
            degree[arcs[i].1] += 1;
        }
        if degree.iter().any(|&d| d != 0 && d != 2) {
            continue;
        }
        let edges: Vec<(usize, usize)> = chosen.iter().map(|&i| arcs[i]).collect();
        if !touched_connected(g.nodes(), &edges) {
            continue;
        }
        // walk the cycle starting along the first arc
        let mut sign = vec![0i64; m];
        let first = chosen[0];
        sign[first] = 1;
        let mut at = arcs[first].1;
        let mut prev = first;
        while at != arcs[first].0 {
            let next = *chosen
                .iter()
                .find(|&&i| i != prev && sign[i] == 0 && (arcs[i].0 == at || arcs[i].1 == at))
                .unwrap();
            if arcs[next].0 == at {
                sign[next] = 1;
                at = arcs[next].1;
            } else {
                sign[next] = -1;
                at = arcs[next].0;
            }
            prev = next;
        }
        out.insert(sign);
    }
    out
}

/// Simple directed cycles as sorted arc index lists: every touched node has
/// in-degree and out-degree one and the arcs are connected.
pub fn directed_cycles(g: &Digraph) -> BTreeSet<Vec<usize>> {
    let m = g.arc_count();
    assert!(m <= 20, "arc-subset oracle is exponential");
    let arcs = g.arcs();
    let mut out = BTreeSet::new();
    let mut outd = vec![0u8; g.nodes()];
    let mut ind = vec![0u8; g.nodes()];
    'masks: for mask in 1u32..(1 << m) {
        outd.iter_mut().for_each(|x| *x = 0);
        ind.iter_mut().for_each(|x| *x = 0);
        for (i, &(t, h)) in arcs.iter().enumerate() {
            if mask >> i & 1 == 1 {
                outd[t] += 1;
                ind[h] += 1;
                if outd[t] > 1 || ind[h] > 1 {
                    continue 'masks;
                }
            }
        }
        if outd != ind {
            continue;
        }
        let chosen: Vec<usize> = (0..m).filter(|&i| mask >> i & 1 == 1).collect();
        let edges: Vec<(usize, usize)> = chosen.iter().map(|&i| arcs[i]).collect();
        if touched_connected(g.nodes(), &edges) {
            out.insert(chosen);
        }
    }
    out
}

/// `1 + 2^{-i}` for 1-based arc index `i`.
pub fn perturbed_cost(one_based: usize) -> Q {
    Q::one() + Q::new(BigInt::one(), BigInt::one() << one_based)
}
