//! Perfect matching cut on 4-chordal graphs: a bottom-up sweep over BFS levels
//! that fixes private neighbors and emits a 2-CNF formula whose models are the
//! perfect matching cuts.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    bfs_levels, components, connected_components, is_perfect_matching_cut, BfsLevels, Cut, Graph, Side,
};
use crate::twosat::{solve_2sat, Lit, TwoSatInstance, TwoSatOutcome};

/// Case analysis for an undetermined leaf `v` at level `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LeafClassification {
    /// `u` is the only neighbor of `v` in `L_{i-1} \ Q`.
    C1 { u: usize },
    /// `v u1 w u2` is an induced 4-cycle with `u1, u2 ∈ L_{i-1} \ Q` and `w ∈ L_{i-2} \ Q`.
    C2 { u1: usize, u2: usize, w: usize },
    /// `u` is the lone neighbor in one component of `G[L_{i-1} \ Q]`; the other
    /// component holds at least two neighbors of `v`.
    C3 { u: usize },
    /// None of the cases applies: no perfect matching cut exists.
    NoCase,
}

impl fmt::Display for LeafClassification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            LeafClassification::C1 { u } => write!(f, "c1(u=v{u})"),
            LeafClassification::C2 { u1, u2, w } => write!(f, "c2(u1=v{u1}, u2=v{u2}, w=v{w})"),
            LeafClassification::C3 { u } => write!(f, "c3(u=v{u})"),
            LeafClassification::NoCase => write!(f, "none"),
        }
    }
}

/// Within-level scan order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScanOrder {
    #[default]
    Ascending,
    Descending,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PmcOptions {
    pub root: usize,
    pub order: ScanOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceEntry {
    pub vertex: usize,
    pub level: usize,
    pub classification: LeafClassification,
    /// Indices into the formula's clause list emitted for this step.
    pub clauses: std::ops::Range<usize>,
}

/// The determined set `Q` with a log of how it grew.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeterminedSet {
    q: Vec<bool>,
    trace: Vec<TraceEntry>,
}

impl DeterminedSet {
    pub fn new(n: usize) -> Self {
        DeterminedSet { q: vec![false; n], trace: Vec::new() }
    }

    pub fn contains(&self, v: usize) -> bool {
        self.q[v]
    }

    pub fn members(&self) -> Vec<usize> {
        (0..self.q.len()).filter(|&v| self.q[v]).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.q.iter().all(|&b| b)
    }

    pub fn trace(&self) -> &[TraceEntry] {
        &self.trace
    }

    fn insert(&mut self, v: usize) {
        debug_assert!(!self.q[v], "vertex {v} determined twice");
        self.q[v] = true;
    }
}

/// Classifies `v ∈ L_i \ Q`, `i >= 1`, against the current `Q`.
pub fn classify_leaf(g: &Graph, levels: &BfsLevels, q: &DeterminedSet, v: usize) -> LeafClassification {
    let i = levels.level_of[v];
    if i == 0 {
        return LeafClassification::NoCase;
    }
    let upper: Vec<usize> = levels.levels[i - 1].iter().copied().filter(|&u| !q.contains(u)).collect();
    let mut groups: Vec<Vec<usize>> = connected_components(g, &upper)
        .into_iter()
        .map(|comp| comp.into_iter().filter(|&u| g.has_edge(u, v)).collect::<Vec<_>>())
        .filter(|hit: &Vec<usize>| !hit.is_empty())
        .collect();
    groups.sort_by_key(|hit| (hit.len(), hit[0]));
    match groups.as_slice() {
        [one] if one.len() == 1 => LeafClassification::C1 { u: one[0] },
        [a, b] if a.len() == 1 && b.len() == 1 => {
            let (u1, u2) = (a[0].min(b[0]), a[0].max(b[0]));
            if i < 2 {
                return LeafClassification::NoCase;
            }
            levels.levels[i - 2]
                .iter()
                .copied()
                .find(|&w| !q.contains(w) && g.has_edge(w, u1) && g.has_edge(w, u2))
                .map_or(LeafClassification::NoCase, |w| LeafClassification::C2 { u1, u2, w })
        }
        [a, b] if a.len() == 1 && b.len() >= 2 => LeafClassification::C3 { u: a[0] },
        _ => LeafClassification::NoCase,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PmcFormula {
    /// Perfect matching cuts correspond to the models of `formula` (`X` = true vertices).
    Formula { formula: TwoSatInstance, determined: DeterminedSet },
    /// The sweep proved that no perfect matching cut exists; `witness` is the
    /// vertex that could not be assigned a private neighbor.
    NoPmc { witness: usize, determined: DeterminedSet, formula: TwoSatInstance },
}

impl PmcFormula {
    pub fn determined(&self) -> &DeterminedSet {
        match self {
            PmcFormula::Formula { determined, .. } | PmcFormula::NoPmc { determined, .. } => determined,
        }
    }

    /// The clauses emitted so far (all of them when the sweep completed).
    pub fn formula(&self) -> &TwoSatInstance {
        match self {
            PmcFormula::Formula { formula, .. } | PmcFormula::NoPmc { formula, .. } => formula,
        }
    }
}

struct Sweep<'a> {
    g: &'a Graph,
    formula: TwoSatInstance,
    q: DeterminedSet,
}

impl Sweep<'_> {
    fn clause(&mut self, a: Lit, b: Lit) {
        self.formula.add_clause(a, b).expect("vertex ids are variables");
    }

    /// `(p ∨ q), (¬p ∨ ¬q)`: `p` and `q` on different sides.
    fn apart(&mut self, p: usize, q: usize) {
        self.clause(Lit::pos(p), Lit::pos(q));
        self.clause(Lit::neg(p), Lit::neg(q));
    }

    /// `(p ∨ ¬x), (¬p ∨ x)` for each undetermined neighbor `x` of `p`.
    fn together_with_rest(&mut self, p: usize) {
        for &x in self.g.neighbors(p) {
            if !self.q.contains(x) {
                self.clause(Lit::pos(p), Lit::neg(x));
                self.clause(Lit::neg(p), Lit::pos(x));
            }
        }
    }
}

/// Runs the sweep from `opts.root`. Requires a connected graph.
pub fn build_pmc_formula(g: &Graph, opts: PmcOptions) -> Result<PmcFormula> {
    let levels = bfs_levels(g, opts.root)?;
    let mut s = Sweep { g, formula: TwoSatInstance::new(g.n()), q: DeterminedSet::new(g.n()) };
    for i in (1..=levels.height()).rev() {
        let mut layer = levels.levels[i].clone();
        if opts.order == ScanOrder::Descending {
            layer.reverse();
        }
        for v in layer {
            if s.q.contains(v) {
                continue;
            }
            let class = classify_leaf(g, &levels, &s.q, v);
            let start = s.formula.clauses().len();
            match class {
                LeafClassification::NoCase => {
                    s.q.trace.push(TraceEntry { vertex: v, level: i, classification: class, clauses: start..start });
                    return Ok(PmcFormula::NoPmc { witness: v, determined: s.q, formula: s.formula });
                }
                LeafClassification::C1 { u } | LeafClassification::C3 { u } => {
                    s.apart(v, u);
                    s.q.insert(v);
                    s.q.insert(u);
                    s.together_with_rest(v);
                    s.together_with_rest(u);
                }
                LeafClassification::C2 { u1, u2, w } => {
                    s.apart(v, w);
                    s.apart(u1, u2);
                    for p in [v, u1, u2, w] {
                        s.q.insert(p);
                    }
                    for p in [v, w, u1, u2] {
                        s.together_with_rest(p);
                    }
                }
            }
            let end = s.formula.clauses().len();
            s.q.trace.push(TraceEntry { vertex: v, level: i, classification: class, clauses: start..end });
        }
    }
    // a vertex never determined (in practice the root) has no possible private neighbor
    if let Some(witness) = g.vertices().find(|&v| !s.q.contains(v)) {
        return Ok(PmcFormula::NoPmc { witness, determined: s.q, formula: s.formula });
    }
    Ok(PmcFormula::Formula { formula: s.formula, determined: s.q })
}

/// Decides a connected graph; returns the `X` side of a perfect matching cut.
fn solve_connected(g: &Graph, opts: PmcOptions) -> Result<Option<Vec<usize>>> {
    let levels = bfs_levels(g, opts.root)?;
    if levels.height() <= 1 {
        // cliques: only K2 has a perfect matching cut
        return Ok((g.n() == 2).then(|| vec![opts.root]));
    }
    match build_pmc_formula(g, opts)? {
        PmcFormula::NoPmc { .. } => Ok(None),
        PmcFormula::Formula { formula, .. } => match solve_2sat(&formula) {
            TwoSatOutcome::Unsat { .. } => Ok(None),
            TwoSatOutcome::Sat(a) => Ok(Some(a.true_vars())),
        },
    }
}

/// Perfect matching cut for 4-chordal graphs, one component at a time. The
/// root option applies to the component containing it; other components
/// start from their smallest vertex.
///
/// A satisfying assignment that fails verification means the input was not
/// 4-chordal and is reported as [`Error::Invariant`].
pub fn solve_pmc_4chordal_with(g: &Graph, opts: PmcOptions) -> Result<Option<Cut>> {
    g.check_vertex(opts.root).or_else(|e| if g.n() == 0 { Ok(()) } else { Err(e) })?;
    let comps = components(g);
    if comps.is_empty() {
        return Ok(None);
    }
    let mut side = vec![Side::Y; g.n()];
    for comp in comps {
        let (sub, remap) = g.induced(&comp);
        let root = remap.iter().position(|&v| v == opts.root).unwrap_or(0);
        let Some(x) = solve_connected(&sub, PmcOptions { root, ..opts })? else {
            return Ok(None);
        };
        for v in x {
            side[remap[v]] = Side::X;
        }
    }
    match is_perfect_matching_cut(g, &side) {
        Ok(cut) => Ok(Some(cut)),
        Err(failure) => Err(Error::Invariant(format!(
            "2-CNF model is not a perfect matching cut ({failure:?}); input is outside the 4-chordal promise"
        ))),
    }
}

pub fn solve_pmc_4chordal(g: &Graph) -> Result<Option<Cut>> {
    solve_pmc_4chordal_with(g, PmcOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::generate::{four_chordal_corpus, GenParams};
    use crate::oracle::{enumerate_matching_cuts, has_pmc, CutKind, OracleConfig};

    fn lit(s: &str) -> Lit {
        match s.strip_prefix('!') {
            Some(v) => Lit::neg(v.parse().unwrap()),
            None => Lit::pos(s.parse().unwrap()),
        }
    }

    fn clauses(list: &[(&str, &str)]) -> Vec<(Lit, Lit)> {
        list.iter().map(|&(a, b)| (lit(a), lit(b))).collect()
    }

    /// Clause multiset with each clause's literals in canonical order.
    fn sorted(v: Vec<(Lit, Lit)>) -> Vec<(Lit, Lit)> {
        let mut v: Vec<_> = v.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        v.sort();
        v
    }

    #[test]
    fn domino_sweep_root0_clauses() {
        let g = catalog::domino_sweep();
        let PmcFormula::Formula { formula, determined } = build_pmc_formula(&g, PmcOptions::default()).unwrap() else {
            panic!("expected a formula");
        };
        let expected = clauses(&[
            ("5", "1"),
            ("!5", "!1"),
            ("3", "4"),
            ("!3", "!4"),
            ("1", "!0"),
            ("!1", "0"),
            ("3", "!2"),
            ("!3", "2"),
            ("2", "0"),
            ("!2", "!0"),
        ]);
        assert_eq!(formula.clauses(), expected.as_slice());
        assert_eq!(determined.trace()[0].classification, LeafClassification::C2 { u1: 3, u2: 4, w: 1 });
        let cut = solve_pmc_4chordal(&g).unwrap().unwrap().normalized();
        assert_eq!(cut.x(), vec![0, 1, 4]);
    }

    #[test]
    fn domino_sweep_root1_clauses() {
        let g = catalog::domino_sweep();
        let opts = PmcOptions { root: 1, ..Default::default() };
        let levels = bfs_levels(&g, 1).unwrap();
        assert_eq!(levels.levels, vec![vec![1], vec![0, 3, 4], vec![2, 5]]);
        let out = build_pmc_formula(&g, opts).unwrap();
        let expected = clauses(&[
            ("2", "1"),
            ("!2", "!1"),
            ("0", "3"),
            ("!0", "!3"),
            ("1", "!4"),
            ("!1", "4"),
            ("3", "!5"),
            ("!3", "5"),
            ("5", "4"),
            ("!5", "!4"),
        ]);
        assert_eq!(sorted(out.formula().clauses().to_vec()), sorted(expected));
        assert!(solve_2sat(out.formula()).is_sat());
    }

    #[test]
    fn triangle_pair_sweep_both_orders() {
        let g = catalog::triangle_pair_sweep();
        let asc = build_pmc_formula(&g, PmcOptions { root: 2, order: ScanOrder::Ascending }).unwrap();
        let PmcFormula::Formula { formula, determined } = &asc else { panic!("ascending order completes") };
        assert_eq!(determined.trace()[0].vertex, 4);
        let expected = clauses(&[
            ("4", "3"),
            ("!4", "!3"),
            ("4", "!5"),
            ("!4", "5"),
            ("3", "!5"),
            ("!3", "5"),
            ("3", "!2"),
            ("!3", "2"),
            ("5", "1"),
            ("!5", "!1"),
            ("1", "!0"),
            ("!1", "0"),
            ("1", "!2"),
            ("!1", "2"),
            ("0", "2"),
            ("!0", "!2"),
        ]);
        assert_eq!(sorted(formula.clauses().to_vec()), sorted(expected));
        assert!(!solve_2sat(formula).is_sat());

        let desc = build_pmc_formula(&g, PmcOptions { root: 2, order: ScanOrder::Descending }).unwrap();
        let PmcFormula::NoPmc { witness, determined, formula } = &desc else { panic!("descending order stops") };
        assert_eq!(*witness, 4);
        assert_eq!(determined.trace()[0].vertex, 5);
        assert_eq!(&formula.clauses()[..4], clauses(&[("5", "2"), ("!5", "!2"), ("1", "3"), ("!1", "!3")]).as_slice());
        assert_eq!(solve_pmc_4chordal(&g).unwrap(), None);
    }

    #[test]
    fn k2_and_cliques() {
        let k2 = catalog::path(2);
        let out = build_pmc_formula(&k2, PmcOptions::default()).unwrap();
        assert_eq!(sorted(out.formula().clauses().to_vec()), sorted(clauses(&[("0", "1"), ("!0", "!1")])));
        let levels = bfs_levels(&k2, 0).unwrap();
        assert_eq!(classify_leaf(&k2, &levels, &DeterminedSet::new(2), 1), LeafClassification::C1 { u: 0 });
        assert_eq!(solve_pmc_4chordal(&k2).unwrap().unwrap().x(), vec![0]);
        let cfg = OracleConfig::default();
        for n in 1..=6 {
            let k = catalog::complete(n);
            let closed = solve_pmc_4chordal(&k).unwrap().is_some();
            assert_eq!(closed, has_pmc(&k, &cfg).unwrap_or(false));
            // the sweep alone reaches the same verdict
            let sweep = match build_pmc_formula(&k, PmcOptions::default()).unwrap() {
                PmcFormula::Formula { formula, .. } => solve_2sat(&formula).is_sat(),
                PmcFormula::NoPmc { .. } => false,
            };
            assert_eq!(sweep, closed, "K{n}");
        }
    }

    #[test]
    fn undetermined_root_is_rejected() {
        // P3 rooted at an end: the sweep fixes 2 against 1 and never reaches 0
        let g = catalog::path(3);
        match build_pmc_formula(&g, PmcOptions::default()).unwrap() {
            PmcFormula::NoPmc { witness, .. } => assert_eq!(witness, 0),
            other => panic!("expected no pmc, got {other:?}"),
        }
        assert_eq!(solve_pmc_4chordal(&g).unwrap(), None);
    }

    #[test]
    fn components_are_independent() {
        let two = catalog::disjoint_union(&[catalog::domino(), catalog::path(2)]);
        let cut = solve_pmc_4chordal(&two).unwrap().unwrap();
        assert!(is_perfect_matching_cut(&two, cut.sides()).is_ok());
        let bad = catalog::disjoint_union(&[catalog::domino(), catalog::path(3)]);
        assert_eq!(solve_pmc_4chordal(&bad).unwrap(), None);
        assert_eq!(solve_pmc_4chordal(&Graph::empty(0)).unwrap(), None);
        assert_eq!(solve_pmc_4chordal(&Graph::empty(2)).unwrap(), None);
    }

    #[test]
    fn corpus_matches_oracle_for_every_root_and_order() {
        let cfg = OracleConfig::default();
        for (i, g) in four_chordal_corpus(5, 60, GenParams { min_n: 3, max_n: 14 }).iter().enumerate() {
            let truth = has_pmc(g, &cfg).unwrap();
            for root in g.vertices() {
                for order in [ScanOrder::Ascending, ScanOrder::Descending] {
                    let opts = PmcOptions { root, order };
                    let got = solve_pmc_4chordal_with(g, opts).unwrap();
                    assert_eq!(got.is_some(), truth, "instance {i} root {root} {order:?}: {g:?}");
                    if let Some(cut) = got {
                        level_components_monochromatic(g, root, &cut);
                    }
                    if let Ok(PmcFormula::Formula { determined, .. } | PmcFormula::NoPmc { determined, .. }) =
                        build_pmc_formula(g, opts)
                    {
                        c2_steps_are_four_cycles(g, &determined);
                    }
                }
            }
        }
    }

    fn level_components_monochromatic(g: &Graph, root: usize, cut: &Cut) {
        let levels = bfs_levels(g, root).unwrap();
        for level in &levels.levels {
            for comp in connected_components(g, level) {
                assert!(comp.iter().all(|&v| cut.side(v) == cut.side(comp[0])));
            }
        }
    }

    fn c2_steps_are_four_cycles(g: &Graph, q: &DeterminedSet) {
        for step in q.trace() {
            if let LeafClassification::C2 { u1, u2, w } = step.classification {
                let v = step.vertex;
                assert!(g.has_edge(v, u1) && g.has_edge(v, u2) && g.has_edge(w, u1) && g.has_edge(w, u2));
                assert!(!g.has_edge(v, w) && !g.has_edge(u1, u2));
            }
        }
    }

    #[test]
    fn right_sweep_graph_pmc_is_listed_by_oracle() {
        let g = catalog::domino_sweep();
        let all = enumerate_matching_cuts(&g, CutKind::Perfect, &OracleConfig::default()).unwrap();
        assert!(all.iter().any(|c| c.x() == vec![0, 1, 4]));
    }
}
