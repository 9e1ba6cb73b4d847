//! Simple undirected graphs on dense vertex ids, breadth-first levels,
//! components, and the cut predicates the solvers and oracles share.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An undirected edge, stored with the smaller endpoint first.
pub type Edge = (usize, usize);

pub(crate) fn norm(u: usize, v: usize) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Immutable simple graph. Adjacency lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n(), self.edges())
    }
}

impl Graph {
    /// Builds a graph, rejecting self-loops, duplicate edges and out-of-range endpoints.
    pub fn new(n: usize, edges: &[Edge]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = norm(u, w[0]);
                return Err(Error::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m: edges.len() })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && v < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n()
    }

    /// All edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.m);
        for u in self.vertices() {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Materializes `G[vertices]`. The second component maps new ids to old ids
    /// (new id `i` is `vertices[i]` after sorting and deduplication).
    pub fn induced(&self, vertices: &[usize]) -> (Graph, Vec<usize>) {
        let mut keep: Vec<usize> = vertices.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let mut adj = vec![Vec::new(); keep.len()];
        let mut m = 0;
        for (i, &v) in keep.iter().enumerate() {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX {
                    adj[i].push(index[w]);
                    if i < index[w] {
                        m += 1;
                    }
                }
            }
        }
        (Graph { adj, m }, keep)
    }

    /// `G - S` for a vertex set `S`, with the same remap convention as [`Graph::induced`].
    pub fn without_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = self.vertices().filter(|&v| !gone[v]).collect();
        self.induced(&keep)
    }

    /// Same vertex set, with the given edges deleted. Edges not present are ignored.
    pub fn without_edges(&self, removed: &[Edge]) -> Graph {
        let mut adj = self.adj.clone();
        let mut m = self.m;
        for &(u, v) in removed {
            if self.has_edge(u, v) {
                adj[u].retain(|&w| w != v);
                adj[v].retain(|&w| w != u);
                m -= 1;
            }
        }
        Graph { adj, m }
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.first_unreachable(0).is_none()
    }

    fn first_unreachable(&self, root: usize) -> Option<usize> {
        let mut seen = vec![false; self.n()];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.iter().position(|&s| !s)
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }
}

/// Breadth-first distance levels from a root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BfsLevels {
    pub root: usize,
    pub level_of: Vec<usize>,
    pub levels: Vec<Vec<usize>>,
}

impl BfsLevels {
    /// Index of the deepest non-empty level.
    pub fn height(&self) -> usize {
        self.levels.len() - 1
    }
}

/// BFS levels of a connected graph. Each level is sorted by vertex id.
pub fn bfs_levels(g: &Graph, root: usize) -> Result<BfsLevels> {
    g.check_vertex(root)?;
    let mut level_of = vec![usize::MAX; g.n()];
    level_of[root] = 0;
    let mut queue = VecDeque::from([root]);
    let mut levels: Vec<Vec<usize>> = vec![vec![]];
    while let Some(v) = queue.pop_front() {
        let d = level_of[v];
        levels[d].push(v);
        for &w in g.neighbors(v) {
            if level_of[w] == usize::MAX {
                level_of[w] = d + 1;
                if levels.len() <= d + 1 {
                    levels.push(Vec::new());
                }
                queue.push_back(w);
            }
        }
    }
    if let Some(u) = level_of.iter().position(|&d| d == usize::MAX) {
        return Err(Error::Disconnected { unreachable: u });
    }
    for level in &mut levels {
        level.sort_unstable();
    }
    Ok(BfsLevels { root, level_of, levels })
}

/// Connected components of `G[subset]`, each sorted, ordered by smallest member.
pub fn connected_components(g: &Graph, subset: &[usize]) -> Vec<Vec<usize>> {
    let mut inside = vec![false; g.n()];
    for &v in subset {
        inside[v] = true;
    }
    let mut sorted: Vec<usize> = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let mut seen = vec![false; g.n()];
    let mut out = Vec::new();
    for &s in &sorted {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s];
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &w in g.neighbors(v) {
                if inside[w] && !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// Components of the whole graph.
pub fn components(g: &Graph) -> Vec<Vec<usize>> {
    let all: Vec<usize> = g.vertices().collect();
    connected_components(g, &all)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// A bipartition `(X, Y)` with its edge cut `E(X, Y)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cut {
    side: Vec<Side>,
    crossing: Vec<Edge>,
}

impl Cut {
    /// Builds the cut induced by `side`; both parts must be non-empty.
    pub fn new(g: &Graph, side: Vec<Side>) -> Result<Self> {
        if side.len() != g.n() {
            return Err(Error::Invariant(format!(
                "side vector has length {}, graph has {} vertices",
                side.len(),
                g.n()
            )));
        }
        if !side.contains(&Side::X) || !side.contains(&Side::Y) {
            return Err(Error::NotMatchingCut("one side is empty".into()));
        }
        let mut crossing = Vec::new();
        for (u, v) in g.edges() {
            match (side[u], side[v]) {
                (Side::X, Side::Y) => crossing.push((u, v)),
                (Side::Y, Side::X) => crossing.push((v, u)),
                _ => {}
            }
        }
        crossing.sort_unstable();
        Ok(Cut { side, crossing })
    }

    /// Cut with `X` given as a vertex list.
    pub fn from_x(g: &Graph, x: &[usize]) -> Result<Self> {
        let mut side = vec![Side::Y; g.n()];
        for &v in x {
            g.check_vertex(v)?;
            side[v] = Side::X;
        }
        Cut::new(g, side)
    }

    pub fn side(&self, v: usize) -> Side {
        self.side[v]
    }

    pub fn sides(&self) -> &[Side] {
        &self.side
    }

    /// Crossing edges `(x, y)` with `x` in `X` and `y` in `Y`, sorted.
    pub fn crossing_edges(&self) -> &[Edge] {
        &self.crossing
    }

    pub fn x(&self) -> Vec<usize> {
        self.part(Side::X)
    }

    pub fn y(&self) -> Vec<usize> {
        self.part(Side::Y)
    }

    pub fn part(&self, s: Side) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v] == s).collect()
    }

    /// The same partition with `X` and `Y` exchanged.
    pub fn flipped(&self) -> Cut {
        let side = self.side.iter().map(|s| s.other()).collect();
        let mut crossing: Vec<Edge> = self.crossing.iter().map(|&(u, v)| (v, u)).collect();
        crossing.sort_unstable();
        Cut { side, crossing }
    }

    /// Orientation with vertex 0 in `X`.
    pub fn normalized(&self) -> Cut {
        if self.side[0] == Side::X {
            self.clone()
        } else {
            self.flipped()
        }
    }

    /// Same unordered partition, regardless of orientation.
    pub fn same_partition(&self, other: &Cut) -> bool {
        self.normalized().side == other.normalized().side
    }

    /// Crossing edges as a matching (with endpoints normalized), if they form one.
    pub fn crossing_matching(&self) -> Option<Matching> {
        Matching::new(self.crossing.iter().map(|&(u, v)| norm(u, v)).collect()).ok()
    }
}

impl fmt::Display for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X={:?} Y={:?}", self.x(), self.y())
    }
}

/// A set of pairwise vertex-disjoint edges, stored normalized and sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(edges: Vec<Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().map(|(u, v)| norm(u, v)).collect();
        edges.sort_unstable();
        let mut ends: Vec<usize> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        ends.sort_unstable();
        if let Some(w) = ends.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Invariant(format!("vertex {} covered twice", w[0])));
        }
        Ok(Matching { edges })
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, u: usize, v: usize) -> bool {
        self.edges.binary_search(&norm(u, v)).is_ok()
    }

    /// `mate[v]` for every vertex of a graph on `n` vertices.
    pub fn mates(&self, n: usize) -> Vec<Option<usize>> {
        let mut mate = vec![None; n];
        for &(u, v) in &self.edges {
            mate[u] = Some(v);
            mate[v] = Some(u);
        }
        mate
    }
}

/// Why a partition fails a cut predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutFailure {
    EmptySide,
    TooManyCrossNeighbors { vertex: usize, count: usize },
    NoCrossNeighbor { vertex: usize },
}

fn cross_counts(g: &Graph, side: &[Side]) -> Vec<usize> {
    g.vertices().map(|v| g.neighbors(v).iter().filter(|&&w| side[w] != side[v]).count()).collect()
}

/// Every vertex has at most one neighbor across, and both sides are non-empty.
pub fn is_matching_cut(g: &Graph, side: &[Side]) -> std::result::Result<Cut, CutFailure> {
    let cut = Cut::new(g, side.to_vec()).map_err(|_| CutFailure::EmptySide)?;
    let counts = cross_counts(g, side);
    if let Some(v) = counts.iter().position(|&c| c >= 2) {
        return Err(CutFailure::TooManyCrossNeighbors { vertex: v, count: counts[v] });
    }
    Ok(cut)
}

/// Every vertex has exactly one neighbor across.
pub fn is_perfect_matching_cut(g: &Graph, side: &[Side]) -> std::result::Result<Cut, CutFailure> {
    let cut = is_matching_cut(g, side)?;
    let counts = cross_counts(g, side);
    if let Some(v) = counts.iter().position(|&c| c == 0) {
        return Err(CutFailure::NoCrossNeighbor { vertex: v });
    }
    Ok(cut)
}

/// Why a matching is not a disconnected perfect matching.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DpmFailure {
    NotAnEdge(usize, usize),
    Uncovered(usize),
    /// `G - E(M)` is still connected, so no cut has all its edges inside `M`.
    StillConnected,
}

/// A perfect matching `M` contains a matching cut exactly when `G - E(M)` is disconnected.
pub fn is_disconnected_perfect_matching(g: &Graph, matching: &Matching) -> std::result::Result<(), DpmFailure> {
    for &(u, v) in matching.edges() {
        if !g.has_edge(u, v) {
            return Err(DpmFailure::NotAnEdge(u, v));
        }
    }
    let mates = matching.mates(g.n());
    if let Some(v) = mates.iter().position(|m| m.is_none()) {
        return Err(DpmFailure::Uncovered(v));
    }
    if g.without_edges(matching.edges()).is_connected() {
        return Err(DpmFailure::StillConnected);
    }
    Ok(())
}
