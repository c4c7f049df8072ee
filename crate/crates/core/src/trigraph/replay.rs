use std::collections::HashMap;

use super::{ContractionSequence, ContractionStep, EdgeColor, Trigraph, TrigraphView, VertexId};
use crate::error::{Error, Result};

/// What one contraction step changed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepDelta {
    pub removed: [VertexId; 2],
    pub added: VertexId,
    /// Colored neighborhood of `added` at the moment it was created.
    pub neighborhood: Vec<(VertexId, EdgeColor)>,
}

/// Bag sizes for every vertex ever alive, with members derived on demand.
#[derive(Debug, Clone)]
pub struct BagIndex {
    sizes: Vec<u32>,
    parents: Vec<Option<(VertexId, VertexId)>>,
}

impl BagIndex {
    fn new(n: usize) -> Self {
        let mut sizes = vec![0; 2 * n];
        for s in sizes.iter_mut().take(n + 1).skip(1) {
            *s = 1;
        }
        BagIndex {
            sizes,
            parents: vec![None; 2 * n],
        }
    }

    fn record(&mut self, step: &ContractionStep) {
        let m = step.merged as usize;
        self.sizes[m] = self.sizes[step.left as usize] + self.sizes[step.right as usize];
        self.parents[m] = Some((step.left, step.right));
    }

    /// `|β(u)|`.
    pub fn size(&self, u: VertexId) -> u32 {
        self.sizes[u as usize]
    }

    pub fn total(&self, set: &[VertexId]) -> u64 {
        set.iter().map(|&u| self.size(u) as u64).sum()
    }

    /// The original vertices contracted into `u`, ascending.
    pub fn members(&self, u: VertexId) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.size(u) as usize);
        let mut stack = vec![u];
        while let Some(x) = stack.pop() {
            match self.parents[x as usize] {
                Some((a, b)) => {
                    stack.push(a);
                    stack.push(b);
                }
                None => out.push(x),
            }
        }
        out.sort_unstable();
        out
    }

    /// `β(T)` as the union of the bags of `set`, ascending.
    pub fn members_of(&self, set: &[VertexId]) -> Vec<VertexId> {
        let mut out: Vec<VertexId> = set.iter().flat_map(|&u| self.members(u)).collect();
        out.sort_unstable();
        out
    }
}

/// A replayed contraction sequence.
///
/// Snapshots `G_1..G_n` are not stored as copies. Each vertex remembers the
/// interval of times it is alive and every colored pair ever created; since the
/// color of a pair never changes while both ends live, this is enough to answer
/// adjacency queries for any snapshot.
#[derive(Debug, Clone)]
pub struct Replay {
    n: usize,
    initial: Trigraph,
    steps: Vec<ContractionStep>,
    deltas: Vec<StepDelta>,
    born: Vec<usize>,
    died: Vec<usize>,
    history: Vec<Vec<(VertexId, EdgeColor)>>,
    colors: HashMap<(VertexId, VertexId), EdgeColor>,
    bags: BagIndex,
    width: usize,
}

fn pair(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// Replays `c` on `g`, computing every snapshot's delta, the width and the bags.
///
/// `c` must hold exactly `n - 1` steps with canonical merged ids; dead or
/// unknown endpoints are reported with the 1-based step index.
pub fn play_sequence(g: &Trigraph, c: &ContractionSequence) -> Result<Replay> {
    let n = g.num_vertices();
    if n == 0 || n != c.n {
        return Err(Error::InvalidSequence(format!(
            "graph has {n} vertices, sequence is for {}",
            c.n
        )));
    }
    if g.vertices().enumerate().any(|(i, v)| v as usize != i + 1) {
        return Err(Error::InvalidSequence("graph vertices must be 1..=n".into()));
    }
    if c.steps.len() != n - 1 {
        return Err(Error::InvalidSequence(format!(
            "expected {} steps, found {}",
            n - 1,
            c.steps.len()
        )));
    }
    let slots = 2 * n;
    let mut born = vec![usize::MAX; slots];
    let mut died = vec![usize::MAX; slots];
    let mut history = vec![Vec::new(); slots];
    let mut colors = HashMap::new();
    let mut red_degree = vec![0usize; slots];
    let mut width = 0;
    for v in g.vertices() {
        born[v as usize] = 1;
        for (x, color) in g.neighbors(v) {
            history[v as usize].push((x, color));
            if v < x {
                colors.insert((v, x), color);
            }
            if color == EdgeColor::Red {
                red_degree[v as usize] += 1;
            }
        }
        width = width.max(red_degree[v as usize]);
    }

    let mut work = g.clone();
    let mut bags = BagIndex::new(n);
    let mut deltas = Vec::with_capacity(n - 1);
    for (idx, step) in c.steps.iter().enumerate() {
        let step_no = idx + 1;
        let expected = (n + step_no) as VertexId;
        if step.merged != expected {
            return Err(Error::InvalidSequence(format!("merged id must be {expected}, found {}", step.merged))
                .at_step(step_no));
        }
        let before: Vec<(VertexId, usize)> = [step.left, step.right]
            .iter()
            .flat_map(|&p| work.neighbors(p).collect::<Vec<_>>())
            .filter(|&(x, c)| c == EdgeColor::Red && x != step.left && x != step.right)
            .map(|(x, _)| (x, 1))
            .collect();
        let nbhd = work.contract(step).map_err(|e| e.at_step(step_no))?;
        for (x, lost) in before {
            red_degree[x as usize] -= lost;
        }
        let m = step.merged;
        born[m as usize] = step_no + 1;
        died[step.left as usize] = step_no + 1;
        died[step.right as usize] = step_no + 1;
        for &(x, color) in &nbhd {
            history[m as usize].push((x, color));
            history[x as usize].push((m, color));
            colors.insert(pair(m, x), color);
            if color == EdgeColor::Red {
                red_degree[m as usize] += 1;
                red_degree[x as usize] += 1;
                width = width.max(red_degree[x as usize]);
            }
        }
        width = width.max(red_degree[m as usize]);
        bags.record(step);
        deltas.push(StepDelta {
            removed: [step.left, step.right],
            added: m,
            neighborhood: nbhd,
        });
    }
    Ok(Replay {
        n,
        initial: g.clone(),
        steps: c.steps.clone(),
        deltas,
        born,
        died,
        history,
        colors,
        bags,
        width,
    })
}

impl Replay {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Maximum red degree over all snapshots.
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn bags(&self) -> &BagIndex {
        &self.bags
    }

    pub fn steps(&self) -> &[ContractionStep] {
        &self.steps
    }

    /// The 1-based step `i`, which turns `G_i` into `G_{i+1}`.
    pub fn step(&self, i: usize) -> &ContractionStep {
        &self.steps[i - 1]
    }

    pub fn deltas(&self) -> &[StepDelta] {
        &self.deltas
    }

    pub fn graph(&self) -> &Trigraph {
        &self.initial
    }

    /// The single vertex of `G_n`.
    pub fn last_vertex(&self) -> VertexId {
        (2 * self.n - 1) as VertexId
    }

    /// The step that created `v`, or `None` for an original vertex.
    pub fn creating_step(&self, v: VertexId) -> Option<usize> {
        let v = v as usize;
        (v > self.n).then(|| v - self.n)
    }

    /// View of `G_time` for `time` in `1..=n`.
    pub fn snapshot(&self, time: usize) -> Snapshot<'_> {
        assert!((1..=self.n).contains(&time), "snapshot time {time} out of range");
        Snapshot { replay: self, time }
    }

    fn alive_at(&self, v: VertexId, time: usize) -> bool {
        let v = v as usize;
        v < self.born.len() && self.born[v] <= time && time < self.died[v]
    }
}

/// `G_time` of a replayed sequence.
#[derive(Debug, Clone, Copy)]
pub struct Snapshot<'a> {
    replay: &'a Replay,
    time: usize,
}

impl<'a> Snapshot<'a> {
    pub fn time(&self) -> usize {
        self.time
    }

    pub fn replay(&self) -> &'a Replay {
        self.replay
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        (1..(2 * self.replay.n) as VertexId)
            .filter(|&v| self.is_live(v))
            .collect()
    }

    /// Builds `G_time` as a standalone trigraph.
    pub fn materialize(&self) -> Trigraph {
        let mut g = self.replay.initial.clone();
        for st in &self.replay.steps[..self.time - 1] {
            g.contract(st).expect("replayed steps are valid");
        }
        g
    }
}

impl TrigraphView for Snapshot<'_> {
    fn is_live(&self, v: VertexId) -> bool {
        self.replay.alive_at(v, self.time)
    }

    fn color(&self, u: VertexId, v: VertexId) -> Option<EdgeColor> {
        if u == v || !self.is_live(u) || !self.is_live(v) {
            return None;
        }
        self.replay.colors.get(&pair(u, v)).copied()
    }

    fn for_each_neighbor<F: FnMut(VertexId, EdgeColor)>(&self, v: VertexId, mut f: F) {
        if !self.is_live(v) {
            return;
        }
        for &(x, c) in &self.replay.history[v as usize] {
            if self.is_live(x) {
                f(x, c);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{figure_one_graph, figure_one_sequence};

    #[test]
    fn figure_one_width_two() {
        let r = play_sequence(&figure_one_graph(), &figure_one_sequence()).unwrap();
        assert_eq!(r.width(), 2);
        assert_eq!(r.bags().size(11), 6);
        assert_eq!(r.bags().members(10), vec![3, 4, 5, 6]);
    }

    #[test]
    fn first_step_of_figure_one() {
        let r = play_sequence(&figure_one_graph(), &figure_one_sequence()).unwrap();
        let g2 = r.snapshot(2).materialize();
        assert_eq!(g2.edges_of_color(EdgeColor::Black), vec![(1, 2), (1, 3), (2, 3), (2, 4), (3, 7)]);
        assert_eq!(g2.edges_of_color(EdgeColor::Red), vec![(4, 7)]);
    }

    #[test]
    fn snapshots_agree_with_materialized_graphs() {
        let r = play_sequence(&figure_one_graph(), &figure_one_sequence()).unwrap();
        for time in 1..=6 {
            let snap = r.snapshot(time);
            let g = snap.materialize();
            assert_eq!(snap.vertices(), g.vertices().collect::<Vec<_>>());
            for u in g.vertices() {
                for v in g.vertices() {
                    assert_eq!(snap.color(u, v), g.color(u, v), "time {time}, pair {u} {v}");
                }
                assert_eq!(snap.red_neighbors(u), g.red_neighbors(u));
            }
        }
    }

    #[test]
    fn edgeless_width_zero() {
        let g = Trigraph::edgeless(4);
        let c = ContractionSequence::from_pairs(4, &[(1, 2), (5, 3), (6, 4)]);
        assert_eq!(play_sequence(&g, &c).unwrap().width(), 0);
    }

    #[test]
    fn triangle_width_zero() {
        let g = Trigraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
        let c = ContractionSequence::from_pairs(3, &[(1, 2), (4, 3)]);
        assert_eq!(play_sequence(&g, &c).unwrap().width(), 0);
    }

    #[test]
    fn dead_vertex_tagged_with_step() {
        let g = figure_one_graph();
        let c = ContractionSequence::from_pairs(6, &[(5, 6), (6, 1), (3, 4), (9, 7), (8, 10)]);
        let err = play_sequence(&g, &c).unwrap_err();
        assert_eq!(err, Error::DeadVertex(6).at_step(2));
    }
}
