//! Trigraphs, contraction steps and their replay.
//!
//! A trigraph is a simple graph whose edges are black or red. Contracting two
//! vertices keeps an edge to a third vertex black only when both parents had a
//! black edge to it; every other inherited adjacency turns red. The width of a
//! contraction sequence is the largest red degree seen along the way.

mod parse;
mod replay;
mod sequence;

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub use parse::{parse_graph, parse_sequence};
pub use replay::{play_sequence, BagIndex, Replay, Snapshot, StepDelta};
pub use sequence::{validate_sequence, ContractionSequence, ContractionStep, ValidationReport, Violation, ViolationKind};

/// Vertex identifier. Originals are `1..=n`; the vertex created by step `i`
/// (1-based) is `n + i`.
pub type VertexId = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeColor {
    Black,
    Red,
}

/// Read access to a trigraph, either a materialized [`Trigraph`] or a
/// [`Snapshot`] of a replayed contraction sequence.
pub trait TrigraphView {
    fn is_live(&self, v: VertexId) -> bool;

    /// Color of the edge `uv`, `None` when absent or when either end is not live.
    fn color(&self, u: VertexId, v: VertexId) -> Option<EdgeColor>;

    fn for_each_neighbor<F: FnMut(VertexId, EdgeColor)>(&self, v: VertexId, f: F);

    fn red_neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        self.for_each_neighbor(v, |x, c| {
            if c == EdgeColor::Red {
                out.push(x);
            }
        });
        out.sort_unstable();
        out
    }

    fn is_black(&self, u: VertexId, v: VertexId) -> bool {
        self.color(u, v) == Some(EdgeColor::Black)
    }

    fn is_red(&self, u: VertexId, v: VertexId) -> bool {
        self.color(u, v) == Some(EdgeColor::Red)
    }
}

/// A trigraph with symmetric colored adjacency and no self-loops.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Trigraph {
    adj: BTreeMap<VertexId, BTreeMap<VertexId, EdgeColor>>,
}

impl Trigraph {
    /// The edgeless graph on `1..=n`.
    pub fn edgeless(n: usize) -> Self {
        let mut g = Trigraph::default();
        for v in 1..=n as VertexId {
            g.add_vertex(v);
        }
        g
    }

    /// An all-black graph on `1..=n` with the given edges.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = Trigraph::edgeless(n);
        for &(u, v) in edges {
            g.add_edge(u, v, EdgeColor::Black)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: VertexId) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeMap::new());
        true
    }

    /// Adds the edge `uv`; both ends must exist, differ, and not be adjacent yet.
    pub fn add_edge(&mut self, u: VertexId, v: VertexId, color: EdgeColor) -> Result<()> {
        if u == v {
            return Err(Error::InvalidArgument(format!("self-loop at {u}")));
        }
        for x in [u, v] {
            if !self.adj.contains_key(&x) {
                return Err(Error::UnknownVertex(x));
            }
        }
        if self.adj[&u].contains_key(&v) {
            return Err(Error::InvalidArgument(format!("duplicate edge {u}-{v}")));
        }
        self.adj.get_mut(&u).unwrap().insert(v, color);
        self.adj.get_mut(&v).unwrap().insert(u, color);
        Ok(())
    }

    pub fn num_vertices(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.adj.values().map(|n| n.len()).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.adj.keys().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = (VertexId, EdgeColor)> + '_ {
        self.adj.get(&v).into_iter().flatten().map(|(&x, &c)| (x, c))
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj.get(&v).map_or(0, |n| n.len())
    }

    pub fn red_degree(&self, v: VertexId) -> usize {
        self.neighbors(v).filter(|&(_, c)| c == EdgeColor::Red).count()
    }

    pub fn max_red_degree(&self) -> usize {
        self.vertices().map(|v| self.red_degree(v)).max().unwrap_or(0)
    }

    /// All edges as `(u, v, color)` with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId, EdgeColor)> {
        let mut out = Vec::new();
        for (&u, nbrs) in &self.adj {
            for (&v, &c) in nbrs.range(u + 1..) {
                out.push((u, v, c));
            }
        }
        out
    }

    pub fn edges_of_color(&self, color: EdgeColor) -> Vec<(VertexId, VertexId)> {
        self.edges()
            .into_iter()
            .filter(|e| e.2 == color)
            .map(|(u, v, _)| (u, v))
            .collect()
    }

    pub fn has_red_edges(&self) -> bool {
        self.adj.values().any(|n| n.values().any(|&c| c == EdgeColor::Red))
    }

    /// Returns a copy of `self` with `step` applied.
    pub fn apply_step(&self, step: &ContractionStep) -> Result<Trigraph> {
        let mut g = self.clone();
        g.contract(step)?;
        Ok(g)
    }

    /// Contracts `step.left` and `step.right` into `step.merged` in place and
    /// returns the colored neighborhood of the merged vertex.
    pub fn contract(&mut self, step: &ContractionStep) -> Result<Vec<(VertexId, EdgeColor)>> {
        let ContractionStep { left, right, merged } = *step;
        if left == right {
            return Err(Error::InvalidArgument(format!("cannot contract {left} with itself")));
        }
        for x in [left, right] {
            if !self.contains(x) {
                return Err(Error::DeadVertex(x));
            }
        }
        if self.contains(merged) {
            return Err(Error::InvalidArgument(format!("merged id {merged} already in use")));
        }
        let a = self.adj.remove(&left).unwrap();
        let b = self.adj.remove(&right).unwrap();
        let mut merged_nbrs = BTreeMap::new();
        for (&x, &ca) in &a {
            if x == right {
                continue;
            }
            let color = match b.get(&x) {
                Some(&EdgeColor::Black) if ca == EdgeColor::Black => EdgeColor::Black,
                _ => EdgeColor::Red,
            };
            merged_nbrs.insert(x, color);
        }
        for &x in b.keys() {
            if x != left && !a.contains_key(&x) {
                merged_nbrs.insert(x, EdgeColor::Red);
            }
        }
        for x in a.keys().chain(b.keys()) {
            if let Some(n) = self.adj.get_mut(x) {
                n.remove(&left);
                n.remove(&right);
            }
        }
        for (&x, &c) in &merged_nbrs {
            self.adj.get_mut(&x).unwrap().insert(merged, c);
        }
        let out = merged_nbrs.iter().map(|(&x, &c)| (x, c)).collect();
        self.adj.insert(merged, merged_nbrs);
        Ok(out)
    }

    /// Vertex sets of size at most `max_size` that contain `v` and are
    /// connected in the red graph. See [`red_connected_sets`].
    pub fn red_connected_sets(&self, v: VertexId, max_size: usize) -> Result<Vec<Vec<VertexId>>> {
        red_connected_sets(self, v, max_size)
    }
}

impl TrigraphView for Trigraph {
    fn is_live(&self, v: VertexId) -> bool {
        self.contains(v)
    }

    fn color(&self, u: VertexId, v: VertexId) -> Option<EdgeColor> {
        self.adj.get(&u).and_then(|n| n.get(&v)).copied()
    }

    fn for_each_neighbor<F: FnMut(VertexId, EdgeColor)>(&self, v: VertexId, mut f: F) {
        for (x, c) in self.neighbors(v) {
            f(x, c);
        }
    }
}

/// Enumerates every vertex set `S` with `v ∈ S`, `|S| ≤ max_size` and `S`
/// connected in the red graph of `g`, each exactly once.
///
/// The enumeration extends the current set by one frontier vertex at a time,
/// always taking frontier vertices in ascending order and forbidding the ones
/// skipped before it, so the output order is deterministic. Each set is sorted.
pub fn red_connected_sets<G: TrigraphView>(g: &G, v: VertexId, max_size: usize) -> Result<Vec<Vec<VertexId>>> {
    if !g.is_live(v) {
        return Err(Error::UnknownVertex(v));
    }
    if max_size == 0 {
        return Err(Error::InvalidArgument("set size bound must be at least 1".into()));
    }
    let mut out = Vec::new();
    let mut current = vec![v];
    let mut forbidden = Vec::new();
    let frontier = g.red_neighbors(v);
    extend_red_set(g, &mut current, &frontier, &mut forbidden, max_size, &mut out);
    Ok(out)
}

fn extend_red_set<G: TrigraphView>(
    g: &G,
    current: &mut Vec<VertexId>,
    frontier: &[VertexId],
    forbidden: &mut Vec<VertexId>,
    max_size: usize,
    out: &mut Vec<Vec<VertexId>>,
) {
    let mut set = current.clone();
    set.sort_unstable();
    out.push(set);
    if current.len() == max_size {
        return;
    }
    let forbidden_len = forbidden.len();
    for (idx, &x) in frontier.iter().enumerate() {
        let mut next: Vec<VertexId> = frontier[idx + 1..].to_vec();
        for y in g.red_neighbors(x) {
            if !current.contains(&y) && !forbidden.contains(&y) && !frontier.contains(&y) && !next.contains(&y) {
                next.push(y);
            }
        }
        next.sort_unstable();
        current.push(x);
        extend_red_set(g, current, &next, forbidden, max_size, out);
        current.pop();
        forbidden.push(x);
    }
    forbidden.truncate(forbidden_len);
}
