//! Partial dominating set: is there a set of `k` vertices whose closed
//! neighborhood has at least `t` vertices?

use crate::dp::SolveOptions;
use crate::error::Result;
use crate::extended::{has_black_neighbor, ExtendedProfile};
use crate::partial::{solve, Objective, PartialResult};
use crate::sets;
use crate::trigraph::{play_sequence, ContractionSequence, Trigraph, TrigraphView, VertexId};

pub type PdsResult = PartialResult;

/// Solves the instance `(g, k, t)` along `c`.
pub fn solve_pds(g: &Trigraph, c: &ContractionSequence, k: usize, t: u64) -> Result<PdsResult> {
    solve_pds_with(&play_sequence(g, c)?, k, t, SolveOptions::default())
}

/// Like [`solve_pds`] on an already replayed sequence.
pub fn solve_pds_with(replay: &crate::trigraph::Replay, k: usize, t: u64, opts: SolveOptions) -> Result<PdsResult> {
    solve(Objective::Domination, replay, k, t, opts)
}

/// For each part, the vertices of the refined `M` in it that have a black
/// neighbor in some part's `D`. Their bags are dominated from outside the part.
pub fn compute_cj<G: TrigraphView>(parts: &[ExtendedProfile], m_hat: &[VertexId], g_prev: &G) -> Vec<Vec<VertexId>> {
    let d_all: Vec<VertexId> = parts.iter().fold(Vec::new(), |acc, p| sets::union(&acc, &p.d()));
    parts
        .iter()
        .map(|p| {
            sets::intersection(m_hat, &p.t)
                .into_iter()
                .filter(|&u| has_black_neighbor(g_prev, u, &d_all))
                .collect()
        })
        .collect()
}
