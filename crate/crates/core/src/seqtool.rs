//! Contraction sequences for graphs that arrive without one.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::trigraph::{play_sequence, ContractionSequence, ContractionStep, EdgeColor, Trigraph, TrigraphView, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqSearchLimits {
    /// Largest graph [`exact_min_width`] accepts.
    pub max_n: usize,
    /// Greedy candidates are pairs at most this far apart.
    pub candidate_radius: usize,
    /// Below this many live vertices the greedy tries every pair.
    pub full_sweep_below: usize,
}

impl Default for SeqSearchLimits {
    fn default() -> Self {
        SeqSearchLimits {
            max_n: 10,
            candidate_radius: 2,
            full_sweep_below: 32,
        }
    }
}

struct Greedy {
    g: Trigraph,
    red: HashMap<VertexId, usize>,
    hist: Vec<usize>,
}

impl Greedy {
    fn new(g: &Trigraph) -> Self {
        let red: HashMap<VertexId, usize> = g.vertices().map(|v| (v, g.red_degree(v))).collect();
        let mut hist = vec![0; g.num_vertices() + 1];
        for &r in red.values() {
            hist[r] += 1;
        }
        Greedy { g: g.clone(), red, hist }
    }

    fn merged_neighborhood(&self, u: VertexId, v: VertexId) -> BTreeMap<VertexId, EdgeColor> {
        let mut out = BTreeMap::new();
        for (x, c) in self.g.neighbors(u) {
            if x != v {
                let black = c == EdgeColor::Black && self.g.color(v, x) == Some(EdgeColor::Black);
                out.insert(x, if black { EdgeColor::Black } else { EdgeColor::Red });
            }
        }
        for (x, _) in self.g.neighbors(v) {
            if x != u {
                out.entry(x).or_insert(EdgeColor::Red);
            }
        }
        out
    }

    /// `(max red degree after contracting uv, red degree of the merged vertex)`.
    fn cost(&mut self, u: VertexId, v: VertexId) -> (usize, usize) {
        let nbrs = self.merged_neighborhood(u, v);
        let own = nbrs.values().filter(|&&c| c == EdgeColor::Red).count();
        let mut worst = own;
        let touched: Vec<VertexId> = [u, v].into_iter().chain(nbrs.keys().copied()).collect();
        for x in &touched {
            self.hist[self.red[x]] -= 1;
        }
        for (&x, &c) in &nbrs {
            let lost = [u, v].iter().filter(|&&p| self.g.color(x, p) == Some(EdgeColor::Red)).count();
            let gained = usize::from(c == EdgeColor::Red);
            worst = worst.max(self.red[&x] - lost + gained);
        }
        if let Some(top) = self.hist.iter().rposition(|&c| c > 0) {
            worst = worst.max(top);
        }
        for x in &touched {
            self.hist[self.red[x]] += 1;
        }
        (worst, own)
    }

    fn contract(&mut self, step: &ContractionStep) {
        let before: Vec<VertexId> = self
            .g
            .neighbors(step.left)
            .chain(self.g.neighbors(step.right))
            .map(|(x, _)| x)
            .filter(|&x| x != step.left && x != step.right)
            .collect();
        for x in [step.left, step.right] {
            let r = self.red.remove(&x).unwrap();
            self.hist[r] -= 1;
        }
        self.g.contract(step).expect("greedy contracts live vertices");
        for x in before.into_iter().chain([step.merged]) {
            let r = self.g.red_degree(x);
            if let Some(old) = self.red.insert(x, r) {
                if old == r {
                    continue;
                }
                self.hist[old] -= 1;
            }
            self.hist[r] += 1;
        }
    }

    fn candidates(&self, limits: &SeqSearchLimits) -> Vec<(VertexId, VertexId)> {
        let live: Vec<VertexId> = self.g.vertices().collect();
        let all = || {
            let mut out = Vec::new();
            for (i, &u) in live.iter().enumerate() {
                out.extend(live[i + 1..].iter().map(|&v| (u, v)));
            }
            out
        };
        if live.len() < limits.full_sweep_below {
            return all();
        }
        let mut out = Vec::new();
        for &u in &live {
            let mut seen = HashSet::from([u]);
            let mut queue = VecDeque::from([(u, 0)]);
            while let Some((x, dist)) = queue.pop_front() {
                if dist == limits.candidate_radius {
                    continue;
                }
                for (y, _) in self.g.neighbors(x) {
                    if seen.insert(y) {
                        if u < y {
                            out.push((u, y));
                        }
                        queue.push_back((y, dist + 1));
                    }
                }
            }
        }
        if out.is_empty() {
            return all();
        }
        out.sort_unstable();
        out
    }
}

/// A sequence built by always contracting the pair that keeps the maximum red
/// degree lowest, then the merged vertex's red degree lowest, then the
/// lexicographically smallest pair. Returns the sequence and its width.
pub fn greedy_sequence(g: &Trigraph) -> Result<(ContractionSequence, usize)> {
    greedy_sequence_with(g, &SeqSearchLimits::default())
}

pub fn greedy_sequence_with(g: &Trigraph, limits: &SeqSearchLimits) -> Result<(ContractionSequence, usize)> {
    let n = g.num_vertices();
    if n == 0 {
        return Err(Error::InvalidArgument("the graph has no vertices".into()));
    }
    let mut state = Greedy::new(g);
    let mut steps = Vec::with_capacity(n - 1);
    let mut width = 0;
    for i in 1..n {
        let mut best = None;
        for (u, v) in state.candidates(limits) {
            let cost = state.cost(u, v);
            if best.is_none_or(|(c, _)| cost < c) {
                best = Some((cost, (u, v)));
            }
        }
        let ((worst, _), (u, v)) = best.expect("two live vertices remain");
        let step = ContractionStep::new(u, v, (n + i) as VertexId);
        state.contract(&step);
        width = width.max(worst);
        steps.push(step);
    }
    Ok((ContractionSequence::new(n, steps), width))
}

struct Exact {
    nbrs: Vec<u32>,
    failed: HashSet<Vec<u32>>,
}

impl Exact {
    fn max_red_degree(&self, bags: &[u32]) -> usize {
        let red = |a: u32, b: u32| {
            let mut touch = false;
            let mut full = true;
            for x in (0..32).filter(|x| a >> x & 1 == 1) {
                let hit = self.nbrs[x] & b;
                touch |= hit != 0;
                full &= hit == b;
            }
            touch && !full
        };
        (0..bags.len())
            .map(|i| (0..bags.len()).filter(|&j| j != i && red(bags[i], bags[j])).count())
            .max()
            .unwrap_or(0)
    }

    /// Whether `bags` can be contracted to one bag keeping red degree `<= d`;
    /// on success `path` holds the merges in order.
    fn finish(&mut self, bags: &[u32], d: usize, path: &mut Vec<(u32, u32)>) -> bool {
        if bags.len() == 1 {
            return true;
        }
        if self.failed.contains(bags) {
            return false;
        }
        for i in 0..bags.len() {
            for j in i + 1..bags.len() {
                let mut next: Vec<u32> = bags.iter().enumerate().filter(|&(x, _)| x != i && x != j).map(|(_, &b)| b).collect();
                next.push(bags[i] | bags[j]);
                next.sort_unstable();
                if self.max_red_degree(&next) > d {
                    continue;
                }
                path.push((bags[i], bags[j]));
                if self.finish(&next, d, path) {
                    return true;
                }
                path.pop();
            }
        }
        self.failed.insert(bags.to_vec());
        false
    }
}

/// The minimum width over all contraction sequences of `g`, with a sequence attaining it.
pub fn exact_min_width(g: &Trigraph, limits: &SeqSearchLimits) -> Result<(usize, ContractionSequence)> {
    let n = g.num_vertices();
    if n > limits.max_n || n > 31 {
        return Err(Error::Budget(format!("exact search is limited to {} vertices, got {n}", limits.max_n.min(31))));
    }
    let (greedy, upper) = greedy_sequence(g)?;
    let mut nbrs = vec![0u32; n];
    for (u, v) in g.edges_of_color(EdgeColor::Black) {
        nbrs[u as usize - 1] |= 1 << (v - 1);
        nbrs[v as usize - 1] |= 1 << (u - 1);
    }
    let mut search = Exact {
        nbrs,
        failed: HashSet::new(),
    };
    let start: Vec<u32> = (0..n).map(|x| 1 << x).collect();
    for d in 0..upper {
        search.failed.clear();
        let mut path = Vec::new();
        if search.finish(&start, d, &mut path) {
            let mut id: HashMap<u32, VertexId> = (0..n).map(|x| (1u32 << x, x as VertexId + 1)).collect();
            let mut steps = Vec::with_capacity(n - 1);
            for (i, (a, b)) in path.into_iter().enumerate() {
                let merged = (n + i + 1) as VertexId;
                let (l, r) = (id[&a], id[&b]);
                steps.push(ContractionStep::new(l.min(r), l.max(r), merged));
                id.insert(a | b, merged);
            }
            return Ok((d, ContractionSequence::new(n, steps)));
        }
    }
    Ok((upper, greedy))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Path,
    Cycle,
    Cograph,
    /// `size × size`.
    Grid,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "cograph" => Ok(Family::Cograph),
            "grid" => Ok(Family::Grid),
            other => Err(Error::InvalidArgument(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub graph: Trigraph,
    pub sequence: ContractionSequence,
    pub width: usize,
}

fn path_graph(n: usize) -> Result<Trigraph> {
    let edges: Vec<_> = (1..n as VertexId).map(|i| (i, i + 1)).collect();
    Trigraph::from_edges(n, &edges)
}

/// A random cograph on `n` vertices together with the sequence that merges
/// sibling modules bottom-up.
fn cograph(n: usize, seed: u64) -> Result<(Trigraph, ContractionSequence)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Trigraph::edgeless(n);
    let mut parts: Vec<(VertexId, Vec<VertexId>)> = (1..=n as VertexId).map(|v| (v, vec![v])).collect();
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let a = rng.gen_range(0..parts.len());
        let (rep_a, mut left) = parts.swap_remove(a);
        let b = rng.gen_range(0..parts.len());
        let (rep_b, right) = parts.swap_remove(b);
        if rng.gen_bool(0.5) {
            for &x in &left {
                for &y in &right {
                    g.add_edge(x, y, EdgeColor::Black)?;
                }
            }
        }
        let merged = (n + i) as VertexId;
        steps.push(ContractionStep::new(rep_a.min(rep_b), rep_a.max(rep_b), merged));
        left.extend(right);
        parts.push((merged, left));
    }
    Ok((g, ContractionSequence::new(n, steps)))
}

/// A graph from `family` with a sequence and its width. `seed` only affects cographs.
pub fn fixture_family(family: Family, size: usize, seed: u64) -> Result<Fixture> {
    if size == 0 {
        return Err(Error::InvalidArgument("fixture size must be at least 1".into()));
    }
    let (graph, sequence) = match family {
        Family::Path => {
            let g = path_graph(size)?;
            let pairs: Vec<_> = (1..size).map(|i| (if i == 1 { 1 } else { (size + i - 1) as VertexId }, i as VertexId + 1)).collect();
            (g, ContractionSequence::from_pairs(size, &pairs))
        }
        Family::Cycle => {
            let mut g = path_graph(size)?;
            if size >= 3 {
                g.add_edge(1, size as VertexId, EdgeColor::Black)?;
            }
            let (c, _) = greedy_sequence(&g)?;
            (g, c)
        }
        Family::Cograph => cograph(size, seed)?,
        Family::Grid => {
            let id = |r: usize, c: usize| (r * size + c + 1) as VertexId;
            let mut edges = Vec::new();
            for r in 0..size {
                for c in 0..size {
                    if c + 1 < size {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < size {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            let g = Trigraph::from_edges(size * size, &edges)?;
            let (c, _) = greedy_sequence(&g)?;
            (g, c)
        }
    };
    let width = play_sequence(&graph, &sequence)?.width();
    Ok(Fixture { graph, sequence, width })
}
