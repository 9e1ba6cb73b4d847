//! Small named graphs used by tests, examples and the reduction gadgets.

use crate::graph::{Edge, Graph};

fn build(n: usize, edges: &[Edge]) -> Graph {
    Graph::new(n, edges).expect("catalog graphs are well formed")
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
    build(n, &edges)
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    let mut edges: Vec<Edge> = (1..n).map(|i| (i - 1, i)).collect();
    edges.push((0, n - 1));
    build(n, &edges)
}

pub fn complete(n: usize) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    build(n, &edges)
}

/// `K_{1,leaves}` with the center at vertex 0.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<Edge> = (1..=leaves).map(|i| (0, i)).collect();
    build(leaves + 1, &edges)
}

/// Disjoint union of the given graphs, relabelled consecutively.
pub fn disjoint_union(parts: &[Graph]) -> Graph {
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in parts {
        edges.extend(g.edges().into_iter().map(|(u, v)| (u + offset, v + offset)));
        offset += g.n();
    }
    build(offset, &edges)
}

/// `copies` disjoint induced paths on `len` vertices each, e.g. `3P6`.
pub fn path_forest(copies: usize, len: usize) -> Graph {
    disjoint_union(&vec![path(len); copies])
}

/// Two triangles `{a,b,e}` and `{c,d,f}` joined by the edges `ef` and `da`,
/// with `a..f = 0..5`. Its only matching cut separates the triangles, and it
/// has a perfect matching but no disconnected perfect matching.
pub fn triangle_pair() -> Graph {
    build(6, &[(0, 1), (1, 4), (4, 5), (5, 2), (2, 3), (3, 0), (0, 4), (5, 3)])
}

/// Two 4-cycles `abcd` and `dcfe` sharing the edge `cd`, with `a..f = 0..5`.
pub fn domino() -> Graph {
    build(6, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4), (4, 5), (5, 2)])
}

/// The triangle pair labelled `v0..v5`: triangles `v0v1v2` and `v3v4v5`,
/// joined by `v2v3` and `v1v5`.
pub fn triangle_pair_sweep() -> Graph {
    build(6, &[(1, 0), (0, 2), (2, 3), (3, 4), (4, 5), (5, 1), (1, 2), (3, 5)])
}

/// The domino labelled `v0..v5`: 4-cycles `v0v1v3v2` and `v1v4v5v3`.
pub fn domino_sweep() -> Graph {
    build(6, &[(2, 0), (0, 1), (1, 3), (3, 2), (3, 5), (5, 4), (1, 4)])
}

/// The 3-cube; vertex ids are the 3-bit coordinates.
pub fn cube() -> Graph {
    let mut edges = Vec::new();
    for u in 0..8usize {
        for bit in 0..3 {
            let v = u ^ (1 << bit);
            if u < v {
                edges.push((u, v));
            }
        }
    }
    build(8, &edges)
}

/// Petersen graph: outer 5-cycle `0..4`, spokes `i -- i+5`, inner pentagram.
pub fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((5 + i, 5 + (i + 2) % 5));
    }
    build(10, &edges)
}

/// The 10-vertex graph made of a 9-cycle `0..8` plus vertex 9
/// adjacent to `0`, `3` and `6`.
pub fn nine_cycle_hub() -> Graph {
    let mut edges: Vec<Edge> = (0..9).map(|i| (i, (i + 1) % 9)).collect();
    edges.extend([(9, 0), (9, 3), (9, 6)]);
    build(10, &edges)
}
