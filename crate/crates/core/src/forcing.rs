//! Forcing rules for `A,B`-matching cuts, the free-vertex split for 4-chordal
//! graphs, and the matching-cut and disconnected-perfect-matching solvers
//! built on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{
    components, connected_components, is_disconnected_perfect_matching, is_matching_cut, Cut, Edge, Graph, Matching,
    Side,
};
use crate::matching::maximum_matching;

/// A forcing rule. `R1`..`R3` refute; `R4` and `R5` grow `X` and `Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Loc {
    Free,
    In(Side),
}

/// Sets `A ⊆ X`, `B ⊆ Y` and the free vertices `F`, plus the matched `A`-`B` pairs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcingState {
    loc: Vec<Loc>,
    matched: Vec<bool>,
    /// `(a, b)` with `a ∈ A`, `b ∈ B`, in the order they were forced.
    pairs: Vec<Edge>,
}

/// Neighbor counts of one vertex against the current sets.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Counts {
    a: usize,
    b: usize,
    /// `X \ A`
    x_rest: usize,
    /// `Y \ B`
    y_rest: usize,
}

impl ForcingState {
    fn seed(g: &Graph, a: usize, b: usize) -> Self {
        let mut s = ForcingState { loc: vec![Loc::Free; g.n()], matched: vec![false; g.n()], pairs: Vec::new() };
        s.loc[a] = Loc::In(Side::X);
        s.loc[b] = Loc::In(Side::Y);
        s.pair(a, b);
        s
    }

    fn pair(&mut self, a: usize, b: usize) {
        self.matched[a] = true;
        self.matched[b] = true;
        self.pairs.push((a, b));
    }

    fn counts(&self, g: &Graph, v: usize) -> Counts {
        let mut c = Counts::default();
        for &w in g.neighbors(v) {
            match (self.loc[w], self.matched[w]) {
                (Loc::In(Side::X), true) => c.a += 1,
                (Loc::In(Side::X), false) => c.x_rest += 1,
                (Loc::In(Side::Y), true) => c.b += 1,
                (Loc::In(Side::Y), false) => c.y_rest += 1,
                (Loc::Free, _) => {}
            }
        }
        c
    }

    fn members(&self, pred: impl Fn(Loc, bool) -> bool) -> Vec<usize> {
        (0..self.loc.len()).filter(|&v| pred(self.loc[v], self.matched[v])).collect()
    }

    pub fn a(&self) -> Vec<usize> {
        self.members(|l, m| l == Loc::In(Side::X) && m)
    }

    pub fn b(&self) -> Vec<usize> {
        self.members(|l, m| l == Loc::In(Side::Y) && m)
    }

    pub fn x(&self) -> Vec<usize> {
        self.members(|l, _| l == Loc::In(Side::X))
    }

    pub fn y(&self) -> Vec<usize> {
        self.members(|l, _| l == Loc::In(Side::Y))
    }

    pub fn free(&self) -> Vec<usize> {
        self.members(|l, _| l == Loc::Free)
    }

    pub fn pairs(&self) -> &[Edge] {
        &self.pairs
    }

    /// `Some(side)` for vertices of `X` or `Y`, `None` for free vertices.
    pub fn side(&self, v: usize) -> Option<Side> {
        match self.loc[v] {
            Loc::In(s) => Some(s),
            Loc::Free => None,
        }
    }
}

/// The first applicable rule, as `(rule, vertex)`. Refuting rules are checked
/// on every free vertex (ascending) before any growing rule is considered.
pub fn next_rule(g: &Graph, s: &ForcingState) -> Option<(Rule, usize)> {
    let free = s.free();
    let counts: Vec<Counts> = free.iter().map(|&v| s.counts(g, v)).collect();
    for (&v, c) in free.iter().zip(&counts) {
        if c.a > 0 && (c.b > 0 || c.y_rest >= 2) {
            return Some((Rule::R1, v));
        }
        if c.b > 0 && (c.a > 0 || c.x_rest >= 2) {
            return Some((Rule::R2, v));
        }
        if c.x_rest >= 2 && c.y_rest >= 2 {
            return Some((Rule::R3, v));
        }
    }
    for (&v, c) in free.iter().zip(&counts) {
        if c.a > 0 || c.x_rest >= 2 {
            return Some((Rule::R4, v));
        }
        if c.b > 0 || c.y_rest >= 2 {
            return Some((Rule::R5, v));
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Propagation {
    /// A refuting rule fired at `witness`: no `A,B`-matching cut exists.
    NoAbCut {
        rule: Rule,
        witness: usize,
    },
    Stable(ForcingState),
}

/// Applies the rules from `A = {a}`, `B = {b}` until none applies.
pub fn propagate(g: &Graph, a: usize, b: usize) -> Result<Propagation> {
    g.check_vertex(a)?;
    g.check_vertex(b)?;
    if !g.has_edge(a, b) {
        return Err(Error::NotAnEdge(a, b));
    }
    let mut s = ForcingState::seed(g, a, b);
    while let Some((rule, v)) = next_rule(g, &s) {
        let side = match rule {
            Rule::R1 | Rule::R2 | Rule::R3 => return Ok(Propagation::NoAbCut { rule, witness: v }),
            Rule::R4 => Side::X,
            Rule::R5 => Side::Y,
        };
        s.loc[v] = Loc::In(side);
        let across: Vec<usize> =
            g.neighbors(v).iter().copied().filter(|&w| s.loc[w] == Loc::In(side.other()) && !s.matched[w]).collect();
        if let [w] = across[..] {
            match side {
                Side::X => s.pair(v, w),
                Side::Y => s.pair(w, v),
            }
        }
    }
    Ok(Propagation::Stable(s))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FreeSplit {
    /// Free vertices attached (through free paths) to `X` and to `Y` respectively.
    Split { fx: Vec<usize>, fy: Vec<usize> },
    /// A component of `G[F]` attached to both sides; impossible for 4-chordal inputs.
    Mixed { component: Vec<usize> },
}

/// Assigns each component of `G[F]` to the side it attaches to. Components
/// with no attachment at all (only possible when `g` is disconnected) go to `X`.
pub fn split_free_vertices(g: &Graph, s: &ForcingState) -> FreeSplit {
    let (mut fx, mut fy) = (Vec::new(), Vec::new());
    for comp in connected_components(g, &s.free()) {
        let touches = |side| comp.iter().any(|&v| g.neighbors(v).iter().any(|&w| s.side(w) == Some(side)));
        match (touches(Side::X), touches(Side::Y)) {
            (true, true) => return FreeSplit::Mixed { component: comp },
            (_, true) => fy.extend(comp),
            _ => fx.extend(comp),
        }
    }
    fx.sort_unstable();
    fy.sort_unstable();
    FreeSplit::Split { fx, fy }
}

/// Why an edge was passed over by a solver.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SkipReason {
    /// A free component saw both sides; the input is not 4-chordal.
    MixedComponent(Vec<usize>),
    /// The assembled partition failed verification; the input is not 4-chordal.
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SkippedEdge {
    pub edge: Edge,
    pub reason: SkipReason,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McOutcome {
    pub cut: Option<Cut>,
    /// Non-empty only for inputs outside the 4-chordal promise.
    pub skipped: Vec<SkippedEdge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpmOutcome {
    /// A disconnected perfect matching and a matching cut contained in it.
    pub dpm: Option<(Matching, Cut)>,
    pub skipped: Vec<SkippedEdge>,
}

/// Side vector for `(X ∪ F_X, Y ∪ F_Y)`.
fn assemble(g: &Graph, s: &ForcingState, fy: &[usize]) -> Vec<Side> {
    let mut side: Vec<Side> = g.vertices().map(|v| s.side(v).unwrap_or(Side::X)).collect();
    for &v in fy {
        side[v] = Side::Y;
    }
    side
}

/// For a disconnected graph: the component of vertex 0 against the rest.
fn component_split(g: &Graph) -> Vec<Side> {
    let first = &components(g)[0];
    let mut side = vec![Side::Y; g.n()];
    for &v in first {
        side[v] = Side::X;
    }
    side
}

/// Candidate `A,B`-cuts per edge `(a, b)` in ascending order, stopping at the
/// first `accept` that returns `Some`.
fn sweep<T>(
    g: &Graph,
    mut accept: impl FnMut(&ForcingState, Vec<Side>) -> Option<T>,
) -> Result<(Option<T>, Vec<SkippedEdge>)> {
    let mut skipped = Vec::new();
    for (a, b) in g.edges() {
        let s = match propagate(g, a, b)? {
            Propagation::NoAbCut { .. } => continue,
            Propagation::Stable(s) => s,
        };
        let fy = match split_free_vertices(g, &s) {
            FreeSplit::Split { fy, .. } => fy,
            FreeSplit::Mixed { component } => {
                skipped.push(SkippedEdge { edge: (a, b), reason: SkipReason::MixedComponent(component) });
                continue;
            }
        };
        let side = assemble(g, &s, &fy);
        if is_matching_cut(g, &side).is_err() {
            skipped.push(SkippedEdge { edge: (a, b), reason: SkipReason::Unverified });
            continue;
        }
        if let Some(found) = accept(&s, side) {
            return Ok((Some(found), skipped));
        }
    }
    Ok((None, skipped))
}

/// Matching cut for 4-chordal graphs. A disconnected graph on at least two
/// vertices answers with an empty crossing set.
pub fn solve_mc_4chordal(g: &Graph) -> Result<McOutcome> {
    if g.n() < 2 {
        return Ok(McOutcome { cut: None, skipped: Vec::new() });
    }
    if !g.is_connected() {
        let cut = Cut::new(g, component_split(g))?;
        return Ok(McOutcome { cut: Some(cut), skipped: Vec::new() });
    }
    let (cut, skipped) = sweep(g, |_, side| Cut::new(g, side).ok())?;
    Ok(McOutcome { cut, skipped })
}

/// Disconnected perfect matching for 4-chordal graphs. A disconnected graph
/// answers yes exactly when it has a perfect matching.
pub fn solve_dpm_4chordal(g: &Graph) -> Result<DpmOutcome> {
    let none = |skipped| Ok(DpmOutcome { dpm: None, skipped });
    if g.n() < 2 || g.n() % 2 == 1 {
        return none(Vec::new());
    }
    if !g.is_connected() {
        let m = maximum_matching(g);
        if 2 * m.len() != g.n() {
            return none(Vec::new());
        }
        let cut = Cut::new(g, component_split(g))?;
        return Ok(DpmOutcome { dpm: Some((m, cut)), skipped: Vec::new() });
    }
    let (dpm, skipped) = sweep(g, |s, side| {
        let mut ab: Vec<usize> = s.pairs().iter().flat_map(|&(a, b)| [a, b]).collect();
        ab.sort_unstable();
        let (rest, remap) = g.without_vertices(&ab);
        let pm = maximum_matching(&rest);
        if 2 * pm.len() != rest.n() {
            return None;
        }
        let mut edges = s.pairs().to_vec();
        edges.extend(pm.edges().iter().map(|&(u, v)| (remap[u], remap[v])));
        let m = Matching::new(edges).ok()?;
        is_disconnected_perfect_matching(g, &m).ok()?;
        Some((m, Cut::new(g, side).ok()?))
    })?;
    Ok(DpmOutcome { dpm, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::generate::{four_chordal_corpus, GenParams};
    use crate::graph::{bfs_levels, is_disconnected_perfect_matching};
    use crate::oracle::{enumerate_matching_cuts, has_dpm, has_mc, CutKind, OracleConfig};

    fn stable(g: &Graph, a: usize, b: usize) -> ForcingState {
        match propagate(g, a, b).unwrap() {
            Propagation::Stable(s) => s,
            other => panic!("expected a stable state, got {other:?}"),
        }
    }

    /// Stable-state properties, checked directly against the definitions.
    fn check_stable(g: &Graph, s: &ForcingState) {
        assert_eq!(next_rule(g, s), None);
        let (a, b) = (s.a(), s.b());
        for &(u, v) in s.pairs() {
            assert!(g.has_edge(u, v));
        }
        for &u in &a {
            assert_eq!(g.neighbors(u).iter().filter(|w| b.contains(w)).count(), 1);
        }
        for &u in &b {
            assert_eq!(g.neighbors(u).iter().filter(|w| a.contains(w)).count(), 1);
        }
        // (X, Y) is an A,B-matching cut of G[X ∪ Y]: every crossing edge is a pair
        for (u, v) in g.edges() {
            if let (Some(su), Some(sv)) = (s.side(u), s.side(v)) {
                if su != sv {
                    let (x, y) = if su == Side::X { (u, v) } else { (v, u) };
                    assert!(s.pairs().contains(&(x, y)), "crossing edge {u}-{v} is not a pair");
                }
            }
        }
        for v in s.free() {
            let on = |side| g.neighbors(v).iter().filter(|&&w| s.side(w) == Some(side)).count();
            assert!(g.neighbors(v).iter().all(|w| !a.contains(w) && !b.contains(w)));
            assert!(on(Side::X) <= 1 && on(Side::Y) <= 1);
        }
    }

    #[test]
    fn triangle_refutes() {
        let g = catalog::complete(3);
        assert_eq!(propagate(&g, 0, 1).unwrap(), Propagation::NoAbCut { rule: Rule::R1, witness: 2 });
        assert_eq!(propagate(&g, 0, 2), Ok(Propagation::NoAbCut { rule: Rule::R1, witness: 1 }));
        assert_eq!(propagate(&catalog::path(3), 0, 2), Err(Error::NotAnEdge(0, 2)));
    }

    #[test]
    fn single_edge() {
        let s = stable(&catalog::path(2), 0, 1);
        assert_eq!((s.x(), s.y(), s.free()), (vec![0], vec![1], vec![]));
        assert_eq!(split_free_vertices(&catalog::path(2), &s), FreeSplit::Split { fx: vec![], fy: vec![] });
    }

    #[test]
    fn triangle_pair_edge_ef() {
        // a..f = 0..5; the edge ef separates {a,b,e} from {c,d,f}
        let g = catalog::triangle_pair();
        let s = stable(&g, 4, 5);
        check_stable(&g, &s);
        let FreeSplit::Split { fy, .. } = split_free_vertices(&g, &s) else { panic!("mixed") };
        let cut = Cut::new(&g, assemble(&g, &s, &fy)).unwrap();
        assert_eq!(cut.x(), vec![0, 1, 4]);
        assert_eq!(cut.y(), vec![2, 3, 5]);
        let all = enumerate_matching_cuts(&g, CutKind::Matching, &OracleConfig::default()).unwrap();
        assert!(all.iter().any(|c| c.same_partition(&cut)));
    }

    #[test]
    fn five_cycle_is_mixed() {
        let g = catalog::cycle(5);
        let s = stable(&g, 0, 1);
        check_stable(&g, &s);
        assert!(matches!(split_free_vertices(&g, &s), FreeSplit::Mixed { .. }));
        let out = solve_mc_4chordal(&g).unwrap();
        assert_eq!(out.cut, None);
        assert_eq!(out.skipped.len(), 5);
        // the cut exists ({0,1} against {2,3,4}); outside the promise the solver only skips
        assert!(has_mc(&g, &OracleConfig::default()).unwrap());
    }

    #[test]
    fn named_mc() {
        assert_eq!(solve_mc_4chordal(&catalog::complete(4)).unwrap().cut, None);
        let c4 = solve_mc_4chordal(&catalog::cycle(4)).unwrap().cut.unwrap();
        assert_eq!(c4.crossing_edges().len(), 2);
        assert!(solve_mc_4chordal(&catalog::triangle_pair()).unwrap().cut.is_some());
        assert_eq!(solve_mc_4chordal(&Graph::empty(1)).unwrap().cut, None);
        let split = solve_mc_4chordal(&Graph::empty(2)).unwrap().cut.unwrap();
        assert!(split.crossing_edges().is_empty());
    }

    #[test]
    fn named_dpm() {
        let dom = solve_dpm_4chordal(&catalog::domino()).unwrap().dpm.unwrap();
        assert!(is_disconnected_perfect_matching(&catalog::domino(), &dom.0).is_ok());
        assert_eq!(solve_dpm_4chordal(&catalog::triangle_pair()).unwrap().dpm, None);
        let (m, cut) = solve_dpm_4chordal(&catalog::path(2)).unwrap().dpm.unwrap();
        assert_eq!(m.edges(), &[(0, 1)]);
        assert_eq!((cut.x(), cut.y()), (vec![0], vec![1]));
        // two disjoint edges: perfect matching, empty cut between components
        let two = catalog::path_forest(2, 2);
        assert!(solve_dpm_4chordal(&two).unwrap().dpm.is_some());
        assert_eq!(
            solve_dpm_4chordal(&catalog::disjoint_union(&[catalog::path(2), catalog::complete(3)])).unwrap().dpm,
            None
        );
    }

    #[test]
    fn corpus_matches_oracle() {
        let cfg = OracleConfig::default();
        let params = GenParams { min_n: 4, max_n: 14 };
        for (i, g) in four_chordal_corpus(7, 60, params).iter().enumerate() {
            let r = bfs_levels(g, 0).unwrap();
            assert!(r.height() < g.n());
            for (a, b) in g.edges() {
                if let Propagation::Stable(s) = propagate(g, a, b).unwrap() {
                    check_stable(g, &s);
                    assert!(matches!(split_free_vertices(g, &s), FreeSplit::Split { .. }), "instance {i}");
                }
            }
            let mc = solve_mc_4chordal(g).unwrap();
            assert!(mc.skipped.is_empty());
            assert_eq!(mc.cut.is_some(), has_mc(g, &cfg).unwrap(), "mc instance {i}: {g:?}");
            if let Some(cut) = &mc.cut {
                assert!(is_matching_cut(g, cut.sides()).is_ok());
            }
            let dpm = solve_dpm_4chordal(g).unwrap();
            assert_eq!(dpm.dpm.is_some(), has_dpm(g, &cfg).unwrap(), "dpm instance {i}: {g:?}");
            if let Some((m, cut)) = &dpm.dpm {
                assert!(is_disconnected_perfect_matching(g, m).is_ok());
                assert!(cut.crossing_edges().iter().all(|&(u, v)| m.contains(u, v)));
            }
        }
    }

    mod props {
        use super::*;
        use crate::oracle::cuts::tests::arb_graph;
        use proptest::prelude::*;

        proptest! {
            // soundness holds on arbitrary inputs, 4-chordal or not
            #[test]
            fn answers_always_verify(g in arb_graph(10)) {
                if let Some(cut) = solve_mc_4chordal(&g).unwrap().cut {
                    prop_assert!(is_matching_cut(&g, cut.sides()).is_ok());
                }
                if let Some((m, _)) = solve_dpm_4chordal(&g).unwrap().dpm {
                    prop_assert!(is_disconnected_perfect_matching(&g, &m).is_ok());
                }
                for (a, b) in g.edges() {
                    if let Propagation::Stable(s) = propagate(&g, a, b).unwrap() {
                        prop_assert_eq!(next_rule(&g, &s), None);
                    }
                }
            }
        }
    }
}
