use std::collections::BTreeMap;

use super::{Deadline, OracleConfig};
use crate::error::{Error, Result};
use crate::graph::{components, Graph};

/// Hard cap for the bitmask-based searches.
const MASK_BITS: usize = 128;

type Mask = u128;

fn bit(v: usize) -> Mask {
    1 << v
}

fn members(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let v = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(v)
        }
    })
}

struct Masks {
    adj: Vec<Mask>,
}

impl Masks {
    fn new(g: &Graph) -> Result<Self> {
        if g.n() > MASK_BITS {
            return Err(Error::OracleBound { size: g.n(), bound: MASK_BITS });
        }
        let adj = g.vertices().map(|v| g.neighbors(v).iter().fold(0, |m, &w| m | bit(w))).collect();
        Ok(Masks { adj })
    }

    /// Vertices of `allowed` reachable from `start` inside `allowed ∪ {start}`.
    fn reach(&self, start: usize, allowed: Mask) -> Mask {
        let mut seen = bit(start);
        let mut frontier = bit(start);
        while frontier != 0 {
            let mut next = 0;
            for v in members(frontier) {
                next |= self.adj[v];
            }
            next &= allowed & !seen;
            seen |= next;
            frontier = next;
        }
        seen & !bit(start)
    }
}

struct PathSearch<'a> {
    masks: &'a Masks,
    path: Vec<usize>,
    best: Vec<usize>,
    target: usize,
    deadline: Deadline,
}

impl PathSearch<'_> {
    /// `blocked` holds the closed neighborhoods of every path vertex but the last.
    fn extend(&mut self, blocked: Mask) -> Result<()> {
        self.deadline.tick()?;
        let last = *self.path.last().expect("non-empty path");
        if self.path.len() > self.best.len() {
            self.best = self.path.clone();
        }
        if self.best.len() >= self.target {
            return Ok(());
        }
        let grown = blocked | self.masks.adj[last] | bit(last);
        let candidates = self.masks.adj[last] & !blocked;
        for x in members(candidates) {
            let bound = self.path.len() + 1 + self.masks.reach(x, !grown).count_ones() as usize;
            if bound <= self.best.len() {
                continue;
            }
            self.path.push(x);
            self.extend(grown)?;
            self.path.pop();
            if self.best.len() >= self.target {
                return Ok(());
            }
        }
        Ok(())
    }
}

/// A longest induced path, as a vertex sequence. Among equally long paths the
/// first found wins, with the smaller endpoint first.
pub fn longest_induced_path(g: &Graph, cfg: &OracleConfig) -> Result<Vec<usize>> {
    induced_path_at_least(g, usize::MAX, cfg)
}

/// Searches for an induced path on `target` vertices, stopping early once found;
/// otherwise returns a longest one.
fn induced_path_at_least(g: &Graph, target: usize, cfg: &OracleConfig) -> Result<Vec<usize>> {
    cfg.check_size(g)?;
    let masks = Masks::new(g)?;
    let mut search = PathSearch {
        masks: &masks,
        path: Vec::new(),
        best: Vec::new(),
        target: target.min(g.n()),
        deadline: cfg.deadline(),
    };
    for s in g.vertices() {
        search.path = vec![s];
        search.extend(0)?;
        if search.best.len() >= search.target {
            break;
        }
    }
    let mut best = search.best;
    if best.len() > 1 && best[0] > best[best.len() - 1] {
        best.reverse();
    }
    Ok(best)
}

struct CycleSearch<'a> {
    masks: &'a Masks,
    path: Vec<usize>,
    best: Option<Vec<usize>>,
    deadline: Deadline,
}

impl CycleSearch<'_> {
    fn best_len(&self) -> usize {
        self.best.as_ref().map_or(0, |c| c.len())
    }

    /// `path[0]` is the smallest cycle vertex; `inner` holds the closed
    /// neighborhoods of the path vertices strictly between the first and the last.
    fn extend(&mut self, inner: Mask, above: Mask) -> Result<()> {
        self.deadline.tick()?;
        let first = self.path[1];
        let last = *self.path.last().expect("path");
        let near_s = self.masks.adj[self.path[0]];
        let next_inner = inner | self.masks.adj[last] | bit(last);
        for x in members(self.masks.adj[last] & above & !inner) {
            if near_s & bit(x) != 0 {
                // closes a cycle; an edge to the start rules out extending past x
                if x > first && self.path.len() + 1 > self.best_len() {
                    let mut cycle = self.path.clone();
                    cycle.push(x);
                    self.best = Some(cycle);
                }
                continue;
            }
            let reach = self.masks.reach(x, above & !next_inner);
            if reach & near_s == 0 {
                continue;
            }
            if self.path.len() + 1 + reach.count_ones() as usize <= self.best_len() {
                continue;
            }
            self.path.push(x);
            self.extend(next_inner, above)?;
            self.path.pop();
        }
        Ok(())
    }
}

/// A longest induced cycle (length at least 3), or `None` for forests.
pub fn longest_induced_cycle(g: &Graph, cfg: &OracleConfig) -> Result<Option<Vec<usize>>> {
    cfg.check_size(g)?;
    let masks = Masks::new(g)?;
    let mut search = CycleSearch { masks: &masks, path: Vec::new(), best: None, deadline: cfg.deadline() };
    for s in g.vertices() {
        let above: Mask = if s + 1 >= MASK_BITS { 0 } else { !0 << (s + 1) };
        if g.n() - s <= search.best_len() {
            break;
        }
        for p1 in members(masks.adj[s] & above) {
            search.path = vec![s, p1];
            search.extend(0, above)?;
        }
    }
    Ok(search.best)
}

/// True iff `seq` is an induced path of `g` in the given order.
pub fn is_induced_path(g: &Graph, seq: &[usize]) -> bool {
    let mut sorted = seq.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == seq.len()
        && seq.iter().all(|&v| v < g.n())
        && seq
            .iter()
            .enumerate()
            .all(|(i, &u)| seq.iter().enumerate().skip(i + 1).all(|(j, &v)| g.has_edge(u, v) == (j == i + 1)))
}

/// True iff `seq` (length at least 3) is an induced cycle of `g` in the given order.
pub fn is_induced_cycle(g: &Graph, seq: &[usize]) -> bool {
    let k = seq.len();
    k >= 3 && is_induced_path(g, &seq[..k - 1]) && is_induced_path(g, &seq[1..]) && g.has_edge(seq[0], seq[k - 1])
}

/// An induced embedding of `pattern` into `g` (pattern vertex `i` maps to
/// entry `i`), found by backtracking over degree-compatible candidates.
pub fn contains_induced(g: &Graph, pattern: &Graph, cfg: &OracleConfig) -> Result<Option<Vec<usize>>> {
    if pattern.n() > g.n() {
        return Ok(None);
    }
    let masks = Masks::new(g)?;
    // largest pattern components first, each in BFS order
    let mut comps = components(pattern);
    comps.sort_by_key(|c| std::cmp::Reverse(c.len()));
    let mut order = Vec::with_capacity(pattern.n());
    for comp in &comps {
        let mut queue = std::collections::VecDeque::from([comp[0]]);
        let mut seen = vec![false; pattern.n()];
        seen[comp[0]] = true;
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in pattern.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    let mut image = vec![usize::MAX; pattern.n()];
    let mut deadline = cfg.deadline();
    let found = embed(g, &masks, pattern, &order, 0, &mut image, 0, &mut deadline)?;
    Ok(found.then_some(image))
}

#[allow(clippy::too_many_arguments)]
fn embed(
    g: &Graph,
    masks: &Masks,
    pattern: &Graph,
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: Mask,
    deadline: &mut Deadline,
) -> Result<bool> {
    deadline.tick()?;
    let Some(&p) = order.get(depth) else {
        return Ok(true);
    };
    let full: Mask = if g.n() == MASK_BITS { !0 } else { (1 << g.n()) - 1 };
    let mut cand = full & !used;
    for &q in &order[..depth] {
        let img = masks.adj[image[q]];
        if pattern.has_edge(p, q) {
            cand &= img;
        } else {
            cand &= !img;
        }
    }
    for v in members(cand) {
        if g.degree(v) < pattern.degree(p) {
            continue;
        }
        image[p] = v;
        if embed(g, masks, pattern, order, depth + 1, image, used | bit(v), deadline)? {
            return Ok(true);
        }
    }
    image[p] = usize::MAX;
    Ok(false)
}

/// Induced path and cycle structure of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassReport {
    pub longest_induced_path: Vec<usize>,
    pub longest_induced_cycle: Option<Vec<usize>>,
    /// `t -> P_t-free` for each requested `t`.
    pub pt_free: BTreeMap<usize, bool>,
    /// Smallest `k >= 3` with no induced cycle longer than `k`.
    pub chordality: usize,
}

impl ClassReport {
    pub fn longest_induced_path_vertices(&self) -> usize {
        self.longest_induced_path.len()
    }

    pub fn longest_induced_cycle_vertices(&self) -> Option<usize> {
        self.longest_induced_cycle.as_ref().map(|c| c.len())
    }

    pub fn is_k_chordal(&self, k: usize) -> bool {
        self.chordality <= k
    }
}

pub fn class_report(g: &Graph, ts: &[usize], cfg: &OracleConfig) -> Result<ClassReport> {
    let path = longest_induced_path(g, cfg)?;
    let cycle = longest_induced_cycle(g, cfg)?;
    let pt_free = ts.iter().map(|&t| (t, path.len() < t)).collect();
    let chordality = cycle.as_ref().map_or(3, |c| c.len().max(3));
    Ok(ClassReport { longest_induced_path: path, longest_induced_cycle: cycle, pt_free, chordality })
}
