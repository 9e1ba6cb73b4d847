//! Hardness gadgets: `G(H;v)`, the clause gadget, the full reduction graph from
//! positive 1-in-3SAT, and the assignment/cut correspondence.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::catalog;
use crate::error::{Error, Result};
use crate::graph::{is_matching_cut, is_perfect_matching_cut, Cut, Edge, Graph, Side};
use crate::oracle::{
    contains_induced, enumerate_matching_cuts, enumerate_one_in_three, longest_induced_cycle, longest_induced_path,
    CutKind, OracleConfig,
};
use crate::twosat::Assignment;

/// A positive 1-in-3SAT instance: clauses of three distinct variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Formula13 {
    var_count: usize,
    clauses: Vec<[usize; 3]>,
}

impl Formula13 {
    pub fn new(var_count: usize, clauses: Vec<[usize; 3]>) -> Result<Self> {
        for (j, c) in clauses.iter().enumerate() {
            if let Some(&x) = c.iter().find(|&&x| x >= var_count) {
                return Err(Error::MalformedFormula(format!(
                    "clause {j} uses variable {x} but only {var_count} variables exist"
                )));
            }
            if c[0] == c[1] || c[0] == c[2] || c[1] == c[2] {
                return Err(Error::MalformedFormula(format!("clause {j} repeats a variable")));
            }
        }
        Ok(Formula13 { var_count, clauses })
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn clauses(&self) -> &[[usize; 3]] {
        &self.clauses
    }

    /// Number of true variables per clause under `values`.
    pub fn true_counts(&self, values: &[bool]) -> Vec<usize> {
        self.clauses.iter().map(|c| c.iter().filter(|&&x| values[x]).count()).collect()
    }

    /// Checks that every clause has exactly one true variable.
    pub fn check_one_in_three(&self, values: &[bool]) -> Result<()> {
        if values.len() < self.var_count {
            return Err(Error::MalformedFormula(format!(
                "assignment covers {} of {} variables",
                values.len(),
                self.var_count
            )));
        }
        match self.true_counts(values).into_iter().enumerate().find(|&(_, k)| k != 1) {
            Some((clause, true_count)) => Err(Error::NotOneInThree { clause, true_count }),
            None => Ok(()),
        }
    }
}

/// Block size of one clause gadget.
pub const BLOCK: usize = 14;

// offsets inside a clause block
const C: usize = 0;
const CK: usize = 1;
const A: usize = 4;
const B: usize = 7;
const CPK: usize = 10;
const CP: usize = 13;

/// The 21 edges of a clause gadget, as block offsets.
const GADGET_EDGES: [Edge; 21] = [
    (C, CK),
    (C, CK + 1),
    (C, CK + 2),
    (CK, A),
    (CK + 1, A + 1),
    (CK + 2, A + 2),
    (A, B),
    (A + 1, B + 1),
    (A + 2, B + 2),
    (A, A + 1),
    (A, A + 2),
    (A + 1, A + 2),
    (B, CPK),
    (B, CPK + 1),
    (B + 1, CPK),
    (B + 1, CPK + 2),
    (B + 2, CPK + 1),
    (B + 2, CPK + 2),
    (CP, CPK),
    (CP, CPK + 1),
    (CP, CPK + 2),
];

/// `G(H;v)` with the ids of its new vertices. `H - v` keeps the relative
/// order of its vertices (ids `0..n-2`); the new vertices follow.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GhvGadget {
    pub graph: Graph,
    /// New id to id in `H`, for the vertices of `H - v`.
    pub host: Vec<usize>,
    pub a: [usize; 3],
    pub c_k: [usize; 3],
    pub c: usize,
    /// The neighbors of `v`, in `G(H;v)` ids; `b[k]` is adjacent to `a[k]`.
    pub b: [usize; 3],
}

pub fn build_g_h_v(h: &Graph, v: usize) -> Result<GhvGadget> {
    h.check_vertex(v)?;
    if h.degree(v) != 3 {
        return Err(Error::DegreeNotThree { vertex: v, degree: h.degree(v) });
    }
    let (rest, host) = h.without_vertices(&[v]);
    let local = |u: usize| host.iter().position(|&w| w == u).expect("neighbor of v survives");
    let nb = h.neighbors(v);
    let b = [local(nb[0]), local(nb[1]), local(nb[2])];
    let base = rest.n();
    let a = [base, base + 1, base + 2];
    let c_k = [base + 3, base + 4, base + 5];
    let c = base + 6;
    let mut edges = rest.edges();
    for k in 0..3 {
        edges.extend([(c, c_k[k]), (c_k[k], a[k]), (a[k], b[k])]);
    }
    edges.extend([(a[0], a[1]), (a[0], a[2]), (a[1], a[2])]);
    let graph = Graph::new(base + 7, &edges)?;
    Ok(GhvGadget { graph, host, a, c_k, c, b })
}

/// Vertex ids of the reduction graph by role. Clause `j` occupies the block
/// `14j..14j+14` in the order `c, c_1..c_3, a_1..a_3, b_1..b_3, c'_1..c'_3, c'`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetLayout {
    pub graph: Graph,
    pub formula: Formula13,
    /// `(c_j, c'_j)` per clause.
    pub clause_vertices: Vec<(usize, usize)>,
    /// `c_{jk}` per clause.
    pub variable_vertices: Vec<[usize; 3]>,
    pub a_vertices: Vec<[usize; 3]>,
    pub b_vertices: Vec<[usize; 3]>,
    pub cprime_vertices: Vec<[usize; 3]>,
    /// `Q(x)` per variable; empty for variables that occur nowhere.
    pub q_cliques: Vec<Vec<usize>>,
    pub f_clique: Vec<usize>,
    pub t_clique: Vec<usize>,
}

fn clique_edges(vs: &[usize], out: &mut BTreeSet<Edge>) {
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            out.insert((u.min(v), u.max(v)));
        }
    }
}

pub fn build_reduction(f: &Formula13) -> Result<GadgetLayout> {
    let m = f.clauses().len();
    if m == 0 {
        return Err(Error::MalformedFormula("no clauses".into()));
    }
    let mut edges = BTreeSet::new();
    let mut layout = GadgetLayout {
        graph: Graph::empty(0),
        formula: f.clone(),
        clause_vertices: Vec::with_capacity(m),
        variable_vertices: Vec::with_capacity(m),
        a_vertices: Vec::with_capacity(m),
        b_vertices: Vec::with_capacity(m),
        cprime_vertices: Vec::with_capacity(m),
        q_cliques: vec![Vec::new(); f.var_count()],
        f_clique: Vec::with_capacity(2 * m),
        t_clique: Vec::with_capacity(3 * m),
    };
    for (j, clause) in f.clauses().iter().enumerate() {
        let o = j * BLOCK;
        let triple = |start: usize| [o + start, o + start + 1, o + start + 2];
        for &(u, v) in &GADGET_EDGES {
            edges.insert((o + u.min(v), o + u.max(v)));
        }
        layout.clause_vertices.push((o + C, o + CP));
        layout.variable_vertices.push(triple(CK));
        layout.a_vertices.push(triple(A));
        layout.b_vertices.push(triple(B));
        layout.cprime_vertices.push(triple(CPK));
        layout.f_clique.extend([o + C, o + CP]);
        layout.t_clique.extend(triple(A));
        for (k, &x) in clause.iter().enumerate() {
            layout.q_cliques[x].push(o + CK + k);
        }
    }
    layout.f_clique.sort_unstable();
    clique_edges(&layout.f_clique, &mut edges);
    clique_edges(&layout.t_clique, &mut edges);
    for q in &layout.q_cliques {
        clique_edges(q, &mut edges);
    }
    layout.graph = Graph::new(m * BLOCK, &edges.into_iter().collect::<Vec<_>>())?;
    Ok(layout)
}

impl GadgetLayout {
    /// Role name to vertex ids, with 0-based `j`, `k` and `x`.
    pub fn roles(&self) -> BTreeMap<String, Vec<usize>> {
        let mut out = BTreeMap::new();
        for (j, &(c, cp)) in self.clause_vertices.iter().enumerate() {
            out.insert(format!("c[{j}]"), vec![c]);
            out.insert(format!("c'[{j}]"), vec![cp]);
            for k in 0..3 {
                out.insert(format!("cjk[{j}][{k}]"), vec![self.variable_vertices[j][k]]);
                out.insert(format!("a[{j}][{k}]"), vec![self.a_vertices[j][k]]);
                out.insert(format!("b[{j}][{k}]"), vec![self.b_vertices[j][k]]);
                out.insert(format!("c'jk[{j}][{k}]"), vec![self.cprime_vertices[j][k]]);
            }
        }
        for (x, q) in self.q_cliques.iter().enumerate() {
            out.insert(format!("Q[{x}]"), q.clone());
        }
        out.insert("F".into(), self.f_clique.clone());
        out.insert("T".into(), self.t_clique.clone());
        out
    }

    /// The 6-cycle `b_1, c'_1, b_2, c'_3, b_3, c'_2` of clause `j`.
    pub fn clause_cycle(&self, j: usize) -> [usize; 6] {
        let (b, cp) = (self.b_vertices[j], self.cprime_vertices[j]);
        [b[0], cp[0], b[1], cp[2], b[2], cp[1]]
    }
}

/// The perfect matching cut built from a 1-in-3 assignment: `F`, the cliques
/// of false variables, and per clause the `b` vertex of the true variable with
/// its two `c'` neighbors form `X`.
pub fn assignment_to_pmc(layout: &GadgetLayout, a: &Assignment) -> Result<Cut> {
    let f = &layout.formula;
    f.check_one_in_three(&a.0)?;
    let g = &layout.graph;
    let mut side = vec![Side::Y; g.n()];
    for &v in &layout.f_clique {
        side[v] = Side::X;
    }
    for (x, q) in layout.q_cliques.iter().enumerate() {
        if !a.value(x) {
            for &v in q {
                side[v] = Side::X;
            }
        }
    }
    for (j, clause) in f.clauses().iter().enumerate() {
        let k = clause.iter().position(|&x| a.value(x)).expect("checked 1-in-3");
        let b = layout.b_vertices[j][k];
        side[b] = Side::X;
        for &w in g.neighbors(b) {
            if layout.cprime_vertices[j].contains(&w) {
                side[w] = Side::X;
            }
        }
    }
    is_perfect_matching_cut(g, &side)
        .map_err(|e| Error::Invariant(format!("constructed partition is not a perfect matching cut: {e:?}")))
}

fn monochromatic(cut: &Cut, vs: &[usize]) -> Option<Side> {
    let s = cut.side(*vs.first()?);
    vs.iter().all(|&v| cut.side(v) == s).then_some(s)
}

/// Reads the assignment off a matching cut: after flipping so that `F ⊆ X`,
/// a variable is true iff its clique lies in `Y`. Variables that occur in no
/// clause come back false.
pub fn cut_to_assignment(layout: &GadgetLayout, cut: &Cut) -> Result<Assignment> {
    let g = &layout.graph;
    if cut.sides().len() != g.n() {
        return Err(Error::NotMatchingCut(format!("cut has {} vertices, graph has {}", cut.sides().len(), g.n())));
    }
    is_matching_cut(g, cut.sides()).map_err(|e| Error::NotMatchingCut(format!("{e:?}")))?;
    let cut = match monochromatic(cut, &layout.f_clique) {
        Some(Side::X) => cut.clone(),
        Some(Side::Y) => cut.flipped(),
        None => return Err(Error::Invariant("F is split by the cut".into())),
    };
    let mut values = vec![false; layout.formula.var_count()];
    for (x, q) in layout.q_cliques.iter().enumerate() {
        if q.is_empty() {
            continue;
        }
        match monochromatic(&cut, q) {
            Some(s) => values[x] = s == Side::Y,
            None => return Err(Error::Invariant(format!("Q[{x}] is split by the cut"))),
        }
    }
    layout.formula.check_one_in_three(&values).map_err(|e| Error::Invariant(format!("read-back assignment: {e}")))?;
    Ok(Assignment(values))
}

/// Outcome of the structural and oracle checks on a reduction graph. Oracle
/// checks that ran out of budget are `None` and set `partial`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub vertices: usize,
    pub edges: usize,
    pub vertex_count_ok: bool,
    pub clique_sizes_ok: bool,
    pub cliques_ok: bool,
    pub f_t_nonadjacent: bool,
    pub clause_gadgets_ok: bool,
    pub matching_cuts: Option<usize>,
    pub all_cuts_perfect: Option<bool>,
    pub f_t_opposite: Option<bool>,
    pub one_variable_vertex_across: Option<bool>,
    pub q_monochromatic: Option<bool>,
    pub pmc_iff_one_in_three: Option<bool>,
    pub longest_induced_path: Option<usize>,
    pub p14_free: Option<bool>,
    pub longest_induced_cycle: Option<usize>,
    pub eight_chordal: Option<bool>,
    pub free_3p6: Option<bool>,
    pub free_2p7: Option<bool>,
    pub partial: bool,
    pub notes: Vec<String>,
}

impl ReductionReport {
    /// No check failed. Checks that did not run do not count against this.
    pub fn passed(&self) -> bool {
        let opt = [
            self.all_cuts_perfect,
            self.f_t_opposite,
            self.one_variable_vertex_across,
            self.q_monochromatic,
            self.pmc_iff_one_in_three,
            self.p14_free,
            self.eight_chordal,
            self.free_3p6,
            self.free_2p7,
        ];
        self.vertex_count_ok
            && self.clique_sizes_ok
            && self.cliques_ok
            && self.f_t_nonadjacent
            && self.clause_gadgets_ok
            && opt.iter().all(|c| *c != Some(false))
    }

    /// Every check ran and passed.
    pub fn complete_pass(&self) -> bool {
        self.passed() && !self.partial
    }
}

/// Which oracle checks `verify_reduction` runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub oracle: OracleConfig,
    pub cuts: bool,
    pub induced_paths: bool,
    pub induced_cycles: bool,
    pub forests: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle: OracleConfig::default(),
            cuts: true,
            induced_paths: true,
            induced_cycles: true,
            forests: true,
        }
    }
}

fn is_clique(g: &Graph, vs: &[usize]) -> bool {
    vs.iter().enumerate().all(|(i, &u)| vs[i + 1..].iter().all(|&v| g.has_edge(u, v)))
}

pub fn verify_reduction(f: &Formula13, layout: &GadgetLayout, opts: &VerifyOptions) -> ReductionReport {
    let g = &layout.graph;
    let m = f.clauses().len();
    let mut r = ReductionReport { vertices: g.n(), edges: g.m(), ..Default::default() };
    r.vertex_count_ok = g.n() == BLOCK * m;
    r.clique_sizes_ok = layout.f_clique.len() == 2 * m && layout.t_clique.len() == 3 * m;
    r.cliques_ok = is_clique(g, &layout.f_clique)
        && is_clique(g, &layout.t_clique)
        && layout.q_cliques.iter().all(|q| is_clique(g, q));
    r.f_t_nonadjacent = layout.f_clique.iter().all(|&u| layout.t_clique.iter().all(|&v| !g.has_edge(u, v)));
    r.clause_gadgets_ok = (0..m).all(|j| {
        let o = j * BLOCK;
        let mut expected: BTreeSet<Edge> = GADGET_EDGES.iter().map(|&(u, v)| (o + u.min(v), o + u.max(v))).collect();
        // c_j and c'_j are joined through F
        expected.insert((o + C, o + CP));
        let actual: BTreeSet<Edge> = g.edges().into_iter().filter(|&(u, v)| u >= o && v < o + BLOCK).collect();
        actual == expected
    });

    let fail = |r: &mut ReductionReport, what: &str, e: Error| {
        r.partial = true;
        r.notes.push(format!("{what}: {e}"));
    };

    if opts.cuts {
        match enumerate_matching_cuts(g, CutKind::Matching, &opts.oracle) {
            Ok(cuts) => {
                r.matching_cuts = Some(cuts.len());
                r.all_cuts_perfect = Some(cuts.iter().all(|c| is_perfect_matching_cut(g, c.sides()).is_ok()));
                r.f_t_opposite = Some(cuts.iter().all(|c| {
                    matches!((monochromatic(c, &layout.f_clique), monochromatic(c, &layout.t_clique)), (Some(s), Some(t)) if s != t)
                }));
                r.one_variable_vertex_across = Some(cuts.iter().all(|c| {
                    let fs = c.side(layout.f_clique[0]);
                    layout.variable_vertices.iter().all(|vv| vv.iter().filter(|&&v| c.side(v) != fs).count() == 1)
                }));
                r.q_monochromatic = Some(
                    cuts.iter().all(|c| layout.q_cliques.iter().all(|q| q.is_empty() || monochromatic(c, q).is_some())),
                );
                match enumerate_one_in_three(f) {
                    Ok(sols) => {
                        r.pmc_iff_one_in_three =
                            Some(cuts.iter().any(|c| is_perfect_matching_cut(g, c.sides()).is_ok()) == !sols.is_empty())
                    }
                    Err(e) => fail(&mut r, "1-in-3 enumeration", e),
                }
            }
            Err(e) => fail(&mut r, "matching cut enumeration", e),
        }
    }
    let induced_cfg = opts.oracle.with_max_n(opts.oracle.max_n.max(g.n()));
    if opts.induced_paths {
        match longest_induced_path(g, &induced_cfg) {
            Ok(p) => {
                r.longest_induced_path = Some(p.len());
                r.p14_free = Some(p.len() < 14);
            }
            Err(e) => fail(&mut r, "longest induced path", e),
        }
    }
    if opts.induced_cycles {
        match longest_induced_cycle(g, &induced_cfg) {
            Ok(c) => {
                let len = c.map_or(0, |c| c.len());
                r.longest_induced_cycle = Some(len);
                r.eight_chordal = Some(len <= 8);
            }
            Err(e) => fail(&mut r, "longest induced cycle", e),
        }
    }
    if opts.forests {
        for (copies, len) in [(3, 6), (2, 7)] {
            let result = contains_induced(g, &catalog::path_forest(copies, len), &induced_cfg);
            match result {
                Ok(found) => {
                    let free = Some(found.is_none());
                    if copies == 3 {
                        r.free_3p6 = free;
                    } else {
                        r.free_2p7 = free;
                    }
                }
                Err(e) => fail(&mut r, &format!("{copies}P{len} containment"), e),
            }
        }
    }
    r
}
