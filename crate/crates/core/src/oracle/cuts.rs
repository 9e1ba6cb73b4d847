use std::ops::ControlFlow;

use super::{Deadline, OracleConfig};
use crate::error::Result;
use crate::graph::{is_matching_cut, is_perfect_matching_cut, Cut, Graph, Matching, Side};

/// Which cuts an enumeration reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutKind {
    /// Every bipartition into two non-empty sides.
    All,
    /// Cuts whose crossing edges form a matching.
    Matching,
    /// Cuts whose crossing edges form a perfect matching.
    Perfect,
}

fn idx(s: Side) -> usize {
    match s {
        Side::X => 0,
        Side::Y => 1,
    }
}

/// Branch-and-propagate search over side assignments. Vertex 0 is pinned to
/// `X`, so each unordered partition is visited once.
struct CutSearch<'a> {
    g: &'a Graph,
    kind: CutKind,
    side: Vec<Option<Side>>,
    /// Assigned neighbors per side.
    count: Vec<[usize; 2]>,
    trail: Vec<usize>,
    work: Vec<usize>,
    deadline: Deadline,
}

impl<'a> CutSearch<'a> {
    fn new(g: &'a Graph, kind: CutKind, cfg: &OracleConfig) -> Self {
        CutSearch {
            g,
            kind,
            side: vec![None; g.n()],
            count: vec![[0, 0]; g.n()],
            trail: Vec::new(),
            work: Vec::new(),
            deadline: cfg.deadline(),
        }
    }

    fn cross(&self, v: usize) -> usize {
        let s = self.side[v].expect("assigned");
        self.count[v][idx(s.other())]
    }

    fn unassigned_degree(&self, v: usize) -> usize {
        self.g.degree(v) - self.count[v][0] - self.count[v][1]
    }

    fn set(&mut self, v: usize, s: Side) {
        self.side[v] = Some(s);
        self.trail.push(v);
        for &w in self.g.neighbors(v) {
            self.count[w][idx(s)] += 1;
        }
        self.work.push(v);
        self.work.extend_from_slice(self.g.neighbors(v));
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let v = self.trail.pop().expect("trail");
            let s = self.side[v].take().expect("assigned");
            for &w in self.g.neighbors(v) {
                self.count[w][idx(s)] -= 1;
            }
        }
    }

    /// Assigns `v` and propagates forced sides; false on contradiction.
    fn assign(&mut self, v: usize, s: Side) -> bool {
        let g = self.g;
        self.work.clear();
        self.set(v, s);
        if self.kind == CutKind::All {
            return true;
        }
        while let Some(u) = self.work.pop() {
            match self.side[u] {
                Some(su) => {
                    let cross = self.cross(u);
                    if cross > 1 {
                        return false;
                    }
                    let open = self.unassigned_degree(u);
                    if cross == 1 && open > 0 {
                        // every other neighbor must stay on u's side
                        for &w in g.neighbors(u) {
                            if self.side[w].is_none() {
                                self.set(w, su);
                            }
                        }
                    } else if self.kind == CutKind::Perfect && cross == 0 {
                        if open == 0 {
                            return false;
                        }
                        if open == 1 {
                            let w = g
                                .neighbors(u)
                                .iter()
                                .copied()
                                .find(|&w| self.side[w].is_none())
                                .expect("one open neighbor");
                            self.set(w, su.other());
                        }
                    }
                }
                None => {
                    let [nx, ny] = self.count[u];
                    if nx >= 2 && ny >= 2 {
                        return false;
                    }
                    if nx >= 2 {
                        self.set(u, Side::X);
                    } else if ny >= 2 {
                        self.set(u, Side::Y);
                    }
                }
            }
        }
        true
    }

    fn accepts(&self, side: &[Side]) -> bool {
        match self.kind {
            CutKind::All => side.contains(&Side::X) && side.contains(&Side::Y),
            CutKind::Matching => is_matching_cut(self.g, side).is_ok(),
            CutKind::Perfect => is_perfect_matching_cut(self.g, side).is_ok(),
        }
    }

    fn run(&mut self, emit: &mut dyn FnMut(Vec<Side>) -> ControlFlow<()>) -> Result<ControlFlow<()>> {
        self.deadline.tick()?;
        let next = (0..self.g.n())
            .filter(|&v| self.side[v].is_none())
            .max_by_key(|&v| (self.count[v][0] + self.count[v][1], std::cmp::Reverse(v)));
        let Some(v) = next else {
            let side: Vec<Side> = self.side.iter().map(|s| s.expect("complete")).collect();
            if self.accepts(&side) {
                return Ok(emit(side));
            }
            return Ok(ControlFlow::Continue(()));
        };
        for s in [Side::X, Side::Y] {
            let mark = self.trail.len();
            if self.assign(v, s) && self.run(emit)?.is_break() {
                self.undo_to(mark);
                return Ok(ControlFlow::Break(()));
            }
            self.undo_to(mark);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn start(&mut self, emit: &mut dyn FnMut(Vec<Side>) -> ControlFlow<()>) -> Result<()> {
        if self.g.n() < 2 {
            return Ok(());
        }
        if self.assign(0, Side::X) {
            let _ = self.run(emit)?;
        }
        Ok(())
    }
}

/// All cuts of the given kind, one per unordered partition (vertex 0 in `X`),
/// sorted lexicographically by side vector.
pub fn enumerate_matching_cuts(g: &Graph, kind: CutKind, cfg: &OracleConfig) -> Result<Vec<Cut>> {
    cfg.check_size(g)?;
    let mut found = Vec::new();
    CutSearch::new(g, kind, cfg).start(&mut |side| {
        found.push(side);
        ControlFlow::Continue(())
    })?;
    found.sort();
    Ok(found.into_iter().map(|s| Cut::new(g, s).expect("non-empty sides")).collect())
}

/// Some cut of the given kind, if one exists.
pub fn find_cut(g: &Graph, kind: CutKind, cfg: &OracleConfig) -> Result<Option<Cut>> {
    cfg.check_size(g)?;
    let mut found = None;
    CutSearch::new(g, kind, cfg).start(&mut |side| {
        found = Some(side);
        ControlFlow::Break(())
    })?;
    Ok(found.map(|s| Cut::new(g, s).expect("non-empty sides")))
}

pub fn has_mc(g: &Graph, cfg: &OracleConfig) -> Result<bool> {
    Ok(find_cut(g, CutKind::Matching, cfg)?.is_some())
}

pub fn has_pmc(g: &Graph, cfg: &OracleConfig) -> Result<bool> {
    Ok(find_cut(g, CutKind::Perfect, cfg)?.is_some())
}

/// Enumerates matchings by branching on the lowest uncovered vertex.
/// With `perfect` every vertex must be covered; otherwise vertices may be skipped.
fn search_matchings(
    g: &Graph,
    perfect: bool,
    mate: &mut Vec<Option<usize>>,
    skipped: &mut Vec<bool>,
    from: usize,
    deadline: &mut Deadline,
    visit: &mut dyn FnMut(&[Option<usize>]) -> bool,
) -> Result<bool> {
    deadline.tick()?;
    let next = (from..g.n()).find(|&v| mate[v].is_none() && !skipped[v]);
    let Some(v) = next else {
        return Ok(visit(mate));
    };
    for &w in g.neighbors(v) {
        if w > v && mate[w].is_none() && !skipped[w] {
            mate[v] = Some(w);
            mate[w] = Some(v);
            let stop = search_matchings(g, perfect, mate, skipped, v + 1, deadline, visit)?;
            mate[v] = None;
            mate[w] = None;
            if stop {
                return Ok(true);
            }
        }
    }
    if !perfect {
        skipped[v] = true;
        let stop = search_matchings(g, perfect, mate, skipped, v + 1, deadline, visit)?;
        skipped[v] = false;
        if stop {
            return Ok(true);
        }
    }
    Ok(false)
}

fn matching_from_mates(mate: &[Option<usize>]) -> Matching {
    let edges = mate.iter().enumerate().filter_map(|(v, m)| m.filter(|&w| v < w).map(|w| (v, w))).collect();
    Matching::new(edges).expect("mates are symmetric")
}

/// A perfect matching whose removal disconnects `g`, found by enumerating
/// perfect matchings.
pub fn find_dpm(g: &Graph, cfg: &OracleConfig) -> Result<Option<Matching>> {
    cfg.check_size(g)?;
    if g.n() % 2 == 1 || g.n() == 0 {
        return Ok(None);
    }
    let mut deadline = cfg.deadline();
    let mut found = None;
    search_matchings(g, true, &mut vec![None; g.n()], &mut vec![false; g.n()], 0, &mut deadline, &mut |mate| {
        let m = matching_from_mates(mate);
        if !g.without_edges(m.edges()).is_connected() {
            found = Some(m);
            true
        } else {
            false
        }
    })?;
    Ok(found)
}

pub fn has_dpm(g: &Graph, cfg: &OracleConfig) -> Result<bool> {
    Ok(find_dpm(g, cfg)?.is_some())
}

/// Matching-cut existence by a second route: some (possibly empty) matching
/// `M` leaves `G - M` disconnected. Independent of the partition search.
pub fn has_mc_by_matchings(g: &Graph, cfg: &OracleConfig) -> Result<bool> {
    cfg.check_size(g)?;
    if g.n() < 2 {
        return Ok(false);
    }
    let mut deadline = cfg.deadline();
    search_matchings(g, false, &mut vec![None; g.n()], &mut vec![false; g.n()], 0, &mut deadline, &mut |mate| {
        !g.without_edges(matching_from_mates(mate).edges()).is_connected()
    })
}
