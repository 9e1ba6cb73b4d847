//! Seeded random connected 4-chordal graphs.
//!
//! Three families are mixed: chordal graphs grown by attaching simplicial
//! vertices, chordal graphs with 4-cycles spliced onto edges, and perturbed
//! prisms `H □ K2` over a small chordal `H`. Every candidate is kept only if
//! it is connected and the oracle finds no induced cycle longer than 4.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{Edge, Graph};
use crate::oracle::{longest_induced_cycle, OracleConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub min_n: usize,
    pub max_n: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { min_n: 4, max_n: 16 }
    }
}

/// Edge list of a chordal graph on `n` vertices: each new vertex joins a
/// random non-empty subset of a recorded clique.
fn chordal_edges(rng: &mut impl Rng, n: usize) -> Vec<Edge> {
    let mut edges = Vec::new();
    let mut cliques: Vec<Vec<usize>> = vec![vec![0]];
    for v in 1..n {
        let base = cliques.choose(rng).expect("non-empty").clone();
        let k = rng.gen_range(1..=base.len().min(3));
        let chosen: Vec<usize> = base.choose_multiple(rng, k).copied().collect();
        for &u in &chosen {
            edges.push((u, v));
        }
        let mut clique = chosen;
        clique.push(v);
        cliques.push(clique);
    }
    edges
}

fn chordal(rng: &mut impl Rng, n: usize) -> Graph {
    Graph::new(n, &chordal_edges(rng, n)).expect("simple by construction")
}

/// A chordal core with paths of length three glued onto random edges `uw`,
/// closing chordless 4-cycles `u p q w`.
fn spliced(rng: &mut impl Rng, n: usize) -> Graph {
    let splices = rng.gen_range(1..=(n / 4).max(1));
    let core = (n - 2 * splices).max(2);
    let mut edges = chordal_edges(rng, core);
    let mut next = core;
    for _ in 0..splices {
        let (u, w) = *edges.choose(rng).expect("core has an edge");
        edges.extend([(u, next), (next, next + 1), (next + 1, w)]);
        next += 2;
    }
    Graph::new(next, &edges).expect("simple by construction")
}

/// `H □ K2` over a chordal `H`, with a few random edges removed or added.
fn prism(rng: &mut impl Rng, n: usize) -> Graph {
    let half = (n / 2).max(1);
    let h = chordal_edges(rng, half);
    let mut edges: Vec<Edge> = h.iter().flat_map(|&(u, v)| [(u, v), (u + half, v + half)]).collect();
    edges.extend((0..half).map(|v| (v, v + half)));
    for _ in 0..rng.gen_range(0..=2) {
        if rng.gen_bool(0.5) && edges.len() > 1 {
            let i = rng.gen_range(0..edges.len());
            edges.swap_remove(i);
        } else {
            let (u, v) = (rng.gen_range(0..2 * half), rng.gen_range(0..2 * half));
            let e = (u.min(v), u.max(v));
            if u != v && !edges.iter().any(|&(a, b)| (a.min(b), a.max(b)) == e) {
                edges.push(e);
            }
        }
    }
    Graph::new(2 * half, &edges).expect("simple by construction")
}

fn is_four_chordal(g: &Graph) -> bool {
    let cfg = OracleConfig::default().with_max_n(128);
    matches!(longest_induced_cycle(g, &cfg), Ok(c) if c.as_ref().is_none_or(|c| c.len() <= 4))
}

/// One connected 4-chordal graph with `min_n..=max_n` vertices.
pub fn random_four_chordal(rng: &mut impl Rng, params: GenParams) -> Graph {
    assert!(2 <= params.min_n && params.min_n <= params.max_n, "bad size range {params:?}");
    loop {
        let n = rng.gen_range(params.min_n..=params.max_n);
        let g = match rng.gen_range(0..3) {
            0 => chordal(rng, n),
            1 => spliced(rng, n),
            _ => prism(rng, n),
        };
        if (params.min_n..=params.max_n).contains(&g.n()) && g.is_connected() && is_four_chordal(&g) {
            return g;
        }
    }
}

/// `count` graphs; instance `i` depends only on `seed` and `i`.
pub fn four_chordal_corpus(seed: u64, count: usize, params: GenParams) -> Vec<Graph> {
    (0..count).map(|i| instance(seed, i, params)).collect()
}

pub fn instance(seed: u64, index: usize, params: GenParams) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    random_four_chordal(&mut rng, params)
}
