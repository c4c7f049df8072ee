#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use twinprof::logic::{CountingSentence, QFFormula, Term};
use twinprof::seqtool::greedy_sequence;
use twinprof::trigraph::{play_sequence, ContractionSequence, Replay, Trigraph, VertexId};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `G(n, p)` on `1..=n`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Trigraph {
    let mut edges = Vec::new();
    for u in 1..=n as VertexId {
        for v in u + 1..=n as VertexId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Trigraph::from_edges(n, &edges).unwrap()
}

pub struct Instance {
    pub graph: Trigraph,
    pub sequence: ContractionSequence,
    pub replay: Replay,
    pub label: String,
}

pub fn instance(graph: Trigraph, label: String) -> Instance {
    let (sequence, _) = greedy_sequence(&graph).unwrap();
    let replay = play_sequence(&graph, &sequence).unwrap();
    Instance {
        graph,
        sequence,
        replay,
        label,
    }
}

pub const PROBS: [f64; 3] = [0.2, 0.5, 0.8];

/// Graph `i` of the oracle grid: `n` in `4..=10`, edge probability cycling through [`PROBS`].
pub fn grid_instance(i: u64) -> Instance {
    let mut r = rng(0x5eed_0000 + i);
    let n = r.gen_range(4..=10);
    let p = PROBS[(i % 3) as usize];
    let g = random_graph(&mut r, n, p);
    instance(g, format!("grid #{i} (n={n}, p={p})"))
}

pub fn small_instance(seed: u64, n_range: std::ops::RangeInclusive<usize>) -> Instance {
    let mut r = rng(seed);
    let n = r.gen_range(n_range);
    let p = *PROBS.choose(&mut r).unwrap();
    let g = random_graph(&mut r, n, p);
    instance(g, format!("seed {seed} (n={n}, p={p})"))
}

fn random_term(rng: &mut ChaCha8Rng, k: usize) -> Term {
    let pick = rng.gen_range(0..=k as u32);
    if pick == 0 {
        Term::Y
    } else {
        Term::X(pick)
    }
}

pub fn random_formula(rng: &mut ChaCha8Rng, k: usize, depth: usize) -> QFFormula {
    if depth == 0 || rng.gen_bool(0.3) {
        let (s, t) = (random_term(rng, k), random_term(rng, k));
        return if rng.gen_bool(0.6) {
            QFFormula::Adjacent(s, t)
        } else {
            QFFormula::Equal(s, t)
        };
    }
    match rng.gen_range(0..3) {
        0 => random_formula(rng, k, depth - 1).not(),
        1 => random_formula(rng, k, depth - 1).and(random_formula(rng, k, depth - 1)),
        _ => random_formula(rng, k, depth - 1).or(random_formula(rng, k, depth - 1)),
    }
}

/// `k ≤ 2`, one or two formulas of depth at most 3.
pub fn random_sentence(rng: &mut ChaCha8Rng) -> CountingSentence {
    let k = rng.gen_range(1..=2);
    let count = rng.gen_range(1..=2);
    let psis = (0..count).map(|_| random_formula(rng, k, 3)).collect();
    let t = rng.gen_range(0..=8);
    CountingSentence::new(k, psis, t).unwrap()
}

/// `|N[S]|` computed from adjacency lists.
pub fn dominated(g: &Trigraph, s: &[VertexId]) -> u64 {
    let mut hit: Vec<VertexId> = s.to_vec();
    for &x in s {
        hit.extend(g.neighbors(x).map(|(y, _)| y));
    }
    hit.sort_unstable();
    hit.dedup();
    hit.len() as u64
}

/// Edges with an end in `s`, counted from the edge list.
pub fn covered(g: &Trigraph, s: &[VertexId]) -> u64 {
    g.edges().iter().filter(|(u, v, _)| s.contains(u) || s.contains(v)).count() as u64
}

pub fn distinct(s: &[VertexId]) -> bool {
    let mut v = s.to_vec();
    v.sort_unstable();
    v.dedup();
    v.len() == s.len()
}

/// A uniformly random valid contraction sequence for a graph on `1..=n`.
pub fn random_sequence(rng: &mut ChaCha8Rng, n: usize) -> ContractionSequence {
    let mut live: Vec<VertexId> = (1..=n as VertexId).collect();
    let mut pairs = Vec::with_capacity(n.saturating_sub(1));
    for i in 1..n {
        let a = live.swap_remove(rng.gen_range(0..live.len()));
        let b = live.swap_remove(rng.gen_range(0..live.len()));
        pairs.push((a, b));
        live.push((n + i) as VertexId);
    }
    ContractionSequence::from_pairs(n, &pairs)
}

/// Graph and sequence from one seed; the sequence is random or greedy.
pub fn seeded_instance(seed: u64, n: usize, p: f64, greedy: bool) -> Instance {
    let mut r = rng(seed);
    let graph = random_graph(&mut r, n, p);
    if greedy {
        return instance(graph, format!("seed {seed} (n={n}, p={p}, greedy)"));
    }
    let sequence = random_sequence(&mut r, n);
    let replay = play_sequence(&graph, &sequence).unwrap();
    Instance {
        graph,
        sequence,
        replay,
        label: format!("seed {seed} (n={n}, p={p}, random)"),
    }
}
