//! Text formats: edge-list graph files, DIMACS CNF for 1-in-3 formulas, the
//! 2-CNF emitted by the PMC sweep, and the reduction layout sidecar.
//!
//! Graph file: a header line `n m`, then `m` lines `u v` with 0-based ids.
//! Lines starting with `#` and blank lines are ignored anywhere.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::reduction::{Formula13, GadgetLayout};
use crate::twosat::TwoSatInstance;

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn numbers(line: usize, text: &str) -> Result<Vec<i64>> {
    text.split_whitespace()
        .map(|t| t.parse::<i64>().map_err(|_| parse_err(line, format!("not an integer: {t:?}"))))
        .collect()
}

fn to_index(line: usize, x: i64) -> Result<usize> {
    usize::try_from(x).map_err(|_| parse_err(line, format!("negative value {x}")))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hl, header) = lines.next().ok_or_else(|| parse_err(0, "missing header \"n m\""))?;
    let h = numbers(hl, header)?;
    let [n, m] = h[..] else {
        return Err(parse_err(hl, "header must be \"n m\""));
    };
    let (n, m) = (to_index(hl, n)?, to_index(hl, m)?);
    let mut edges = Vec::with_capacity(m);
    let mut last = hl;
    for (ln, l) in lines {
        last = ln;
        let e = numbers(ln, l)?;
        let [u, v] = e[..] else {
            return Err(parse_err(ln, "edge line must be \"u v\""));
        };
        edges.push((to_index(ln, u)?, to_index(ln, v)?));
    }
    if edges.len() != m {
        return Err(parse_err(last, format!("header announces {m} edges, found {}", edges.len())));
    }
    Graph::new(n, &edges)
}

/// Header plus the sorted edge list.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

/// DIMACS CNF with positive 3-literal clauses. Variables `1..=V` become `0..V`.
pub fn parse_cnf13(text: &str) -> Result<Formula13> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses = Vec::new();
    let mut pending: Vec<(usize, i64)> = Vec::new();
    let mut last = 0;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        last = ln;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('c') || l.starts_with('%') {
            continue;
        }
        if l.starts_with('p') {
            let f: Vec<&str> = l.split_whitespace().collect();
            if header.is_some() || f.len() != 4 || f[1] != "cnf" {
                return Err(parse_err(ln, "expected a single header \"p cnf <vars> <clauses>\""));
            }
            let v = numbers(ln, &f[2..].join(" "))?;
            header = Some((to_index(ln, v[0])?, to_index(ln, v[1])?));
            continue;
        }
        let (vars, _) = header.ok_or_else(|| parse_err(ln, "clause before the header"))?;
        for x in numbers(ln, l)? {
            if x != 0 {
                pending.push((ln, x));
                continue;
            }
            let lits = std::mem::take(&mut pending);
            if lits.len() != 3 {
                return Err(parse_err(ln, format!("clause has {} literals, expected 3", lits.len())));
            }
            let mut clause = [0; 3];
            for (k, &(_, x)) in lits.iter().enumerate() {
                if x < 0 {
                    return Err(parse_err(ln, format!("negative literal {x}")));
                }
                let x = x as usize;
                if x > vars {
                    return Err(parse_err(ln, format!("variable {x} exceeds the declared {vars}")));
                }
                clause[k] = x - 1;
            }
            if clause[0] == clause[1] || clause[0] == clause[2] || clause[1] == clause[2] {
                return Err(parse_err(ln, "repeated variable in clause"));
            }
            clauses.push(clause);
        }
    }
    let (vars, count) = header.ok_or_else(|| parse_err(last, "missing header \"p cnf <vars> <clauses>\""))?;
    if let Some(&(ln, _)) = pending.first() {
        return Err(parse_err(ln, "clause not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(parse_err(last, format!("header announces {count} clauses, found {}", clauses.len())));
    }
    Formula13::new(vars, clauses)
}

pub fn write_cnf13(f: &Formula13) -> String {
    let mut out = format!("p cnf {} {}\n", f.var_count(), f.clauses().len());
    for [a, b, c] in f.clauses() {
        let _ = writeln!(out, "{} {} {} 0", a + 1, b + 1, c + 1);
    }
    out
}

/// The sweep's 2-CNF as DIMACS; variable `i + 1` is vertex `i`, true meaning
/// the vertex lies in `X`.
pub fn write_2cnf(inst: &TwoSatInstance) -> String {
    let mut out = String::from("c variable i+1 is vertex i; true means the vertex is in X\n");
    let _ = writeln!(out, "p cnf {} {}", inst.var_count(), inst.clauses().len());
    for &(a, b) in inst.clauses() {
        let _ = writeln!(out, "{} {} 0", a.to_dimacs(), b.to_dimacs());
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarMapEntry {
    pub var: usize,
    pub vertex: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VarMap {
    pub variables: Vec<VarMapEntry>,
}

pub fn var_map(n: usize) -> VarMap {
    VarMap { variables: (0..n).map(|v| VarMapEntry { var: v + 1, vertex: v }).collect() }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub vertices: usize,
    pub edges: usize,
    pub clauses: Vec<[usize; 3]>,
    pub roles: BTreeMap<String, Vec<usize>>,
}

pub fn layout_file(layout: &GadgetLayout) -> LayoutFile {
    LayoutFile {
        vertices: layout.graph.n(),
        edges: layout.graph.m(),
        clauses: layout.formula.clauses().to_vec(),
        roles: layout.roles(),
    }
}

pub fn write_layout_json(layout: &GadgetLayout) -> String {
    serde_json::to_string_pretty(&layout_file(layout)).expect("layout serializes") + "\n"
}
