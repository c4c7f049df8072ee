//! Partial vertex cover: is there a set of `k` vertices touching at least `t` edges?

use crate::dp::SolveOptions;
use crate::error::Result;
use crate::extended::ExtendedProfile;
use crate::partial::{solve, Objective, PartialResult};
use crate::trigraph::{play_sequence, BagIndex, ContractionSequence, Replay, Trigraph, TrigraphView};

pub type PvcResult = PartialResult;

/// Solves the instance `(g, k, t)` along `c`.
pub fn solve_pvc(g: &Trigraph, c: &ContractionSequence, k: usize, t: u64) -> Result<PvcResult> {
    solve_pvc_with(&play_sequence(g, c)?, k, t, SolveOptions::default())
}

/// Like [`solve_pvc`] on an already replayed sequence.
pub fn solve_pvc_with(replay: &Replay, k: usize, t: u64, opts: SolveOptions) -> Result<PvcResult> {
    solve(Objective::Cover, replay, k, t, opts)
}

/// Edges of `G` between the bags of two parts that the parts' solutions cover.
///
/// Only black pairs contribute: a black pair spans a complete bipartite graph
/// between the bags, and red pairs never touch a part's `D`.
pub fn cross_value<G: TrigraphView>(pj: &ExtendedProfile, pl: &ExtendedProfile, g_prev: &G, bags: &BagIndex) -> i64 {
    let (small, large, flipped) = if pj.t.len() <= pl.t.len() { (pj, pl, false) } else { (pl, pj, true) };
    let mut sum = 0i64;
    for (&x, &fx) in small.t.iter().zip(&small.f) {
        for (&y, &fy) in large.t.iter().zip(&large.f) {
            if !g_prev.is_black(x, y) {
                continue;
            }
            let (u, fu, v, fv) = if flipped { (y, fy, x, fx) } else { (x, fx, y, fy) };
            let (fu, fv) = (fu as i64, fv as i64);
            sum += fu * bags.size(v) as i64 + fv * bags.size(u) as i64 - fu * fv;
        }
    }
    sum
}
