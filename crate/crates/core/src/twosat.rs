//! 2-CNF satisfiability via the implication graph and Tarjan's strongly
//! connected components.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A literal: a variable id with a polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Lit {
    pub var: usize,
    pub positive: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, positive: true }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, positive: false }
    }

    pub fn negated(self) -> Lit {
        Lit { var: self.var, positive: !self.positive }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(!self.positive)
    }

    pub fn eval(self, a: &Assignment) -> bool {
        a.value(self.var) == self.positive
    }

    /// Signed 1-based DIMACS encoding.
    pub fn to_dimacs(self) -> i64 {
        let v = self.var as i64 + 1;
        if self.positive {
            v
        } else {
            -v
        }
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "v{}", self.var)
        } else {
            write!(f, "¬v{}", self.var)
        }
    }
}

/// A two-literal clause. Unit clauses are stored as `(l, l)`.
pub type Clause = (Lit, Lit);

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwoSatInstance {
    var_count: usize,
    clauses: Vec<Clause>,
}

impl TwoSatInstance {
    pub fn new(var_count: usize) -> Self {
        TwoSatInstance { var_count, clauses: Vec::new() }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn add_clause(&mut self, a: Lit, b: Lit) -> Result<()> {
        for l in [a, b] {
            if l.var >= self.var_count {
                return Err(Error::VertexOutOfRange { vertex: l.var, n: self.var_count });
            }
        }
        self.clauses.push((a, b));
        Ok(())
    }

    pub fn add_unit(&mut self, l: Lit) -> Result<()> {
        self.add_clause(l, l)
    }
}

/// A truth value for every variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    pub fn value(&self, var: usize) -> bool {
        self.0[var]
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn true_vars(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&v| self.0[v]).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoSatOutcome {
    Sat(Assignment),
    /// `var` and its negation share a strongly connected component.
    Unsat {
        var: usize,
    },
}

impl TwoSatOutcome {
    pub fn is_sat(&self) -> bool {
        matches!(self, TwoSatOutcome::Sat(_))
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            TwoSatOutcome::Sat(a) => Some(a),
            TwoSatOutcome::Unsat { .. } => None,
        }
    }
}

/// Strongly connected components, numbered in order of completion
/// (a reverse topological order of the condensation).
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSET: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSET; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSET; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    // (vertex, next edge position)
    let mut call: Vec<(usize, usize)> = Vec::new();

    for start in 0..n {
        if index[start] != UNSET {
            continue;
        }
        call.push((start, 0));
        index[start] = next_index;
        low[start] = next_index;
        next_index += 1;
        stack.push(start);
        on_stack[start] = true;

        while let Some(&(v, pos)) = call.last() {
            if let Some(&w) = adj[v].get(pos) {
                if let Some(top) = call.last_mut() {
                    top.1 += 1;
                }
                if index[w] == UNSET {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

pub fn solve_2sat(inst: &TwoSatInstance) -> TwoSatOutcome {
    let n = inst.var_count;
    let mut adj = vec![Vec::new(); 2 * n];
    for &(a, b) in &inst.clauses {
        adj[a.negated().node()].push(b.node());
        adj[b.negated().node()].push(a.node());
    }
    let comp = tarjan(&adj);
    let mut values = Vec::with_capacity(n);
    for var in 0..n {
        let (p, q) = (comp[Lit::pos(var).node()], comp[Lit::neg(var).node()]);
        if p == q {
            return TwoSatOutcome::Unsat { var };
        }
        // the literal whose component is later in topological order is true
        values.push(p < q);
    }
    TwoSatOutcome::Sat(Assignment(values))
}

pub fn verify_assignment(inst: &TwoSatInstance, a: &Assignment) -> bool {
    a.len() >= inst.var_count && inst.clauses.iter().all(|&(x, y)| x.eval(a) || y.eval(a))
}
