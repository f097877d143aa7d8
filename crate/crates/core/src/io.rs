//! Text formats: LP instances, points, digraphs, circuits, decompositions and
//! the CSV reports. Every number is written as an exact rational string.
//!
//! Parsers skip blank lines and lines starting with `#`. Diagnostics carry the
//! 1-based line and column of the offending token in the original text.

use std::fmt::Write as _;

use num_traits::Zero;
use serde::Serializer;
use serde_json::{json, Value};

use crate::circuits::Circuit;
use crate::conformal::ConformalSum;
use crate::ddstep::AugmentationTrace;
use crate::error::{Error, Result};
use crate::polyhedron::{LpInstance, Polyhedron};
use crate::ratlin::{self, Rat, RatMat, RatVec};
use crate::reductions::Digraph;

/// Upper bound on any dimension read from a file.
pub const MAX_DIMENSION: usize = 10_000;

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
}

impl Line<'_> {
    fn end_column(&self) -> usize {
        self.tokens.last().map_or(1, |t| t.column + t.text.len())
    }
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut tokens = Vec::new();
        let mut start = None;
        for (pos, ch) in raw.char_indices().chain(std::iter::once((raw.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &raw[s..pos],
                        column: s + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        out.push(Line { number: i + 1, tokens });
    }
    out
}

struct Cursor<'a> {
    lines: Vec<Line<'a>>,
    next: usize,
    last_line: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: tokenize(text),
            next: 0,
            last_line: text.lines().count().max(1),
        }
    }

    fn line(&mut self, what: &str) -> Result<&Line<'a>> {
        match self.lines.get(self.next) {
            Some(_) => {
                self.next += 1;
                Ok(&self.lines[self.next - 1])
            }
            None => Err(parse_error(self.last_line + 1, 1, format!("unexpected end of input, expected {what}"))),
        }
    }

    fn finish(&self) -> Result<()> {
        match self.lines.get(self.next) {
            Some(line) => Err(parse_error(line.number, line.tokens[0].column, "unexpected trailing content")),
            None => Ok(()),
        }
    }
}

fn rat_token(line: usize, tok: &Token<'_>) -> Result<Rat> {
    ratlin::parse_rat(tok.text).map_err(|msg| parse_error(line, tok.column, msg))
}

fn usize_token(line: usize, tok: &Token<'_>, what: &str) -> Result<usize> {
    let value: usize = tok
        .text
        .parse()
        .map_err(|_| parse_error(line, tok.column, format!("expected a nonnegative integer for {what}, found `{}`", tok.text)))?;
    if value > MAX_DIMENSION {
        return Err(parse_error(line, tok.column, format!("{what} = {value} exceeds the limit of {MAX_DIMENSION}")));
    }
    Ok(value)
}

fn rat_row(line: &Line<'_>, len: usize, what: &str) -> Result<RatVec> {
    if line.tokens.len() != len {
        let column = match line.tokens.get(len) {
            Some(t) => t.column,
            None => line.end_column(),
        };
        return Err(parse_error(
            line.number,
            column,
            format!("{what}: expected {len} entries, found {}", line.tokens.len()),
        ));
    }
    line.tokens.iter().map(|t| rat_token(line.number, t)).collect()
}

fn matrix_block(cur: &mut Cursor<'_>, rows: usize, cols: usize, what: &str) -> Result<RatMat> {
    let mut data = Vec::with_capacity(rows);
    for i in 0..rows {
        let line = cur.line(what)?;
        data.push(rat_row(line, cols, &format!("{what} row {}", i + 1))?);
    }
    RatMat::from_rows(cols, data)
}

/// Parses an LP instance. The polyhedron must be pointed.
pub fn parse_instance(text: &str) -> Result<LpInstance> {
    let mut cur = Cursor::new(text);
    let header = cur.line("header `n m_A m_B`")?;
    if header.tokens.len() != 3 {
        return Err(parse_error(header.number, 1, "header must be `n m_A m_B`"));
    }
    let hn = header.number;
    let n = usize_token(hn, &header.tokens[0], "n")?;
    let m_a = usize_token(hn, &header.tokens[1], "m_A")?;
    let m_b = usize_token(hn, &header.tokens[2], "m_B")?;
    if n == 0 {
        return Err(parse_error(hn, header.tokens[0].column, "dimension n must be positive"));
    }

    let a = matrix_block(&mut cur, m_a, n, "A")?;
    let b = if m_a > 0 { rat_row(cur.line("b")?, m_a, "b")? } else { Vec::new() };
    let bm = matrix_block(&mut cur, m_b, n, "B")?;
    let d = if m_b > 0 { rat_row(cur.line("d")?, m_b, "d")? } else { Vec::new() };
    let c = rat_row(cur.line("objective c")?, n, "c")?;
    cur.finish()?;

    let p = Polyhedron::new(a, b, bm, d)?;
    LpInstance::new(p, c)
}

pub fn format_instance(inst: &LpInstance) -> String {
    let p = &inst.polyhedron;
    let mut out = format!("{} {} {}\n", p.dim(), p.eq_matrix().rows(), p.ineq_matrix().rows());
    for row in p.eq_matrix().row_iter() {
        out.push_str(&format_point(row));
    }
    if p.eq_matrix().rows() > 0 {
        out.push_str(&format_point(p.eq_rhs()));
    }
    for row in p.ineq_matrix().row_iter() {
        out.push_str(&format_point(row));
    }
    if p.ineq_matrix().rows() > 0 {
        out.push_str(&format_point(p.ineq_rhs()));
    }
    out.push_str(&format_point(&inst.objective));
    out
}

/// Parses a point of dimension `n`: either `zeros` or `n` rationals on one
/// line.
pub fn parse_point(text: &str, n: usize) -> Result<RatVec> {
    let mut cur = Cursor::new(text);
    let line = cur.line("a point")?;
    let point = if line.tokens.len() == 1 && line.tokens[0].text == "zeros" {
        ratlin::zeros(n)
    } else {
        rat_row(line, n, "point")?
    };
    cur.finish()?;
    Ok(point)
}

/// One line of space-separated rationals, newline-terminated.
pub fn format_point(x: &[Rat]) -> String {
    let mut s = ratlin::format_vec(x);
    s.push('\n');
    s
}

/// Parses a digraph file: `|V| m`, then `m` lines `tail head [cost]` with
/// 1-based nodes. Either every arc has a cost or none does.
pub fn parse_graph(text: &str) -> Result<Digraph> {
    let mut cur = Cursor::new(text);
    let header = cur.line("header `|V| m`")?;
    if header.tokens.len() != 2 {
        return Err(parse_error(header.number, 1, "header must be `|V| m`"));
    }
    let nodes = usize_token(header.number, &header.tokens[0], "|V|")?;
    let m = usize_token(header.number, &header.tokens[1], "m")?;

    let mut arcs = Vec::with_capacity(m);
    let mut costs = Vec::with_capacity(m);
    let mut weighted = None;
    for k in 0..m {
        let line = cur.line("an arc line `tail head [cost]`")?;
        let ln = line.number;
        if !(2..=3).contains(&line.tokens.len()) {
            return Err(parse_error(ln, 1, format!("arc {}: expected `tail head [cost]`", k + 1)));
        }
        let has_cost = line.tokens.len() == 3;
        if *weighted.get_or_insert(has_cost) != has_cost {
            return Err(parse_error(ln, line.end_column(), "either every arc has a cost or none does"));
        }
        let mut end = [0usize; 2];
        for (slot, tok) in end.iter_mut().zip(&line.tokens) {
            let v = usize_token(ln, tok, "node")?;
            if v == 0 || v > nodes {
                return Err(parse_error(ln, tok.column, format!("node {v} out of range 1..={nodes}")));
            }
            *slot = v - 1;
        }
        if end[0] == end[1] {
            return Err(parse_error(ln, line.tokens[0].column, "self-loops are not allowed"));
        }
        arcs.push((end[0], end[1]));
        if has_cost {
            costs.push(rat_token(ln, &line.tokens[2])?);
        }
    }
    cur.finish()?;

    let g = Digraph::new(nodes, arcs)?;
    if weighted == Some(true) {
        g.with_costs(costs)
    } else {
        Ok(g)
    }
}

pub fn format_graph(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.nodes(), g.arc_count());
    for (i, &(t, h)) in g.arcs().iter().enumerate() {
        match g.costs() {
            Some(c) => writeln!(out, "{} {} {}", t + 1, h + 1, c[i]),
            None => writeln!(out, "{} {}", t + 1, h + 1),
        }
        .unwrap();
    }
    out
}

/// One circuit per line.
pub fn format_circuits(circuits: &[Circuit]) -> String {
    circuits.iter().map(|g| format!("{g}\n")).collect()
}

/// One term per line: `alpha | g_1 ... g_n`.
pub fn format_conformal(s: &ConformalSum) -> String {
    s.terms.iter().map(|t| format!("{} | {}\n", t.alpha, t.circuit)).collect()
}

pub const TRACE_HEADER: &str = "iteration,circuit,alpha,improvement,objective_after";

/// Trace CSV. Row `i` describes the step from iterate `i - 1` to iterate `i`.
pub fn format_trace_csv(trace: &AugmentationTrace, c: &[Rat]) -> String {
    let mut out = String::from(TRACE_HEADER);
    out.push('\n');
    for (i, s) in trace.steps.iter().enumerate() {
        let after = ratlin::dot(c, &trace.iterates[i + 1]);
        writeln!(out, "{},{},{},{},{}", i + 1, s.circuit, s.alpha, s.improvement, after).unwrap();
    }
    out
}

pub const BENCH_HEADER: &str = "graph_id,V,m,exact_improvement,approx_improvement,ratio,n_minus_rankA,exact_iters,approx_iters";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRow {
    pub graph_id: usize,
    pub nodes: usize,
    pub arcs: usize,
    pub exact_improvement: Rat,
    pub approx_improvement: Rat,
    pub n_minus_rank_a: usize,
    pub exact_iters: usize,
    pub approx_iters: usize,
}

impl BenchRow {
    /// `approx / exact`, or 1 when neither step improves.
    pub fn ratio(&self) -> Rat {
        if self.exact_improvement.is_zero() {
            ratlin::int(1)
        } else {
            &self.approx_improvement / &self.exact_improvement
        }
    }
}

pub fn format_bench_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(BENCH_HEADER);
    out.push('\n');
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.graph_id,
            r.nodes,
            r.arcs,
            r.exact_improvement,
            r.approx_improvement,
            r.ratio(),
            r.n_minus_rank_a,
            r.exact_iters,
            r.approx_iters
        )
        .unwrap();
    }
    out
}

pub fn rat_json(x: &Rat) -> Value {
    Value::String(x.to_string())
}

pub fn vec_json(x: &[Rat]) -> Value {
    Value::Array(x.iter().map(rat_json).collect())
}

pub fn circuit_json(g: &Circuit) -> Value {
    Value::Array(g.entries().iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn conformal_json(s: &ConformalSum) -> Value {
    Value::Array(
        s.terms
            .iter()
            .map(|t| json!({"alpha": rat_json(&t.alpha), "circuit": circuit_json(&t.circuit)}))
            .collect(),
    )
}

pub(crate) fn serialize_opt_vec<S: Serializer>(v: &Option<RatVec>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(x) => s.collect_seq(x.iter().map(|r| r.to_string())),
        None => s.serialize_none(),
    }
}
