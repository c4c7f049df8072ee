//! Model checking `∃x1..xk Σ_α #y ψ_α ≥ t` over a contraction sequence.

use super::formula::{eval_qf, CountingSentence, Term};
use super::template::{enumerate_templates, set_partitions, TemplateGraph};
use super::virtual_profile::{
    check_virtual_decomposition, enumerate_virtual_profiles, leaf_solution, virtual_compatible_functions, virtual_decompose,
    ExpandedGraph, Node, VirtualProfile, VirtualSolution,
};
use crate::dp::{self, Candidate, Entry, Program, SolveOptions};
use crate::error::{Error, Result};
use crate::profile::ProfileKey;
use crate::trigraph::{play_sequence, ContractionSequence, ContractionStep, Replay, Snapshot, Trigraph, TrigraphView, VertexId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModelCheckResult {
    pub answer: bool,
    /// Best `Σ_α #y ψ_α` over the tuples considered, 0 when there is none.
    pub count: u64,
    /// `x1..xk` in order.
    pub witness: Option<Vec<VertexId>>,
    /// The template the witness realizes.
    pub template: Option<TemplateGraph>,
    pub profiles: usize,
}

impl ModelCheckResult {
    fn none(t: u64, profiles: usize) -> Self {
        ModelCheckResult {
            answer: t == 0,
            count: 0,
            witness: None,
            template: None,
            profiles,
        }
    }
}

struct VirtualProgram<'a> {
    replay: &'a Replay,
    sentence: &'a CountingSentence,
    templates: Vec<TemplateGraph>,
    k: usize,
    d: usize,
}

impl Program for VirtualProgram<'_> {
    type Profile = VirtualProfile;
    type Solution = Vec<Node>;
    type Recipe = Vec<Option<usize>>;

    fn key(&self, p: &VirtualProfile) -> ProfileKey {
        p.key()
    }

    fn tee<'a>(&self, p: &'a VirtualProfile) -> &'a [VertexId] {
        &p.t
    }

    fn sentinel(&self) -> Entry<Vec<Node>> {
        Entry {
            solution: None,
            value: 0,
        }
    }

    fn replaces(&self, value: i64, current: &Entry<Vec<Node>>) -> bool {
        value >= current.value
    }

    fn leaf(&self, p: &VirtualProfile) -> Entry<Vec<Node>> {
        let VirtualSolution { s, value } = leaf_solution(p, self.sentence, self.replay.graph(), self.replay.bags());
        Entry { solution: s, value }
    }

    fn candidates(
        &self,
        g_prev: &Snapshot<'_>,
        step: &ContractionStep,
        p: &VirtualProfile,
        check: bool,
    ) -> Result<Vec<Candidate<VirtualProfile, Vec<Option<usize>>>>> {
        let bags = self.replay.bags();
        let mut out = Vec::new();
        for f_prime in virtual_compatible_functions(p, step, bags)? {
            let dec = virtual_decompose(g_prev, p, step, &f_prime, bags, self.k, self.d)?;
            if check {
                check_virtual_decomposition(g_prev, p, &f_prime, &dec, self.k, self.d, bags)?;
            }
            out.push(Candidate {
                parts: dec.parts,
                extra: 0,
                recipe: dec.sources,
            });
        }
        Ok(out)
    }

    fn combine(&self, p: &VirtualProfile, sources: &Vec<Option<usize>>, parts: &[&Vec<Node>]) -> Vec<Node> {
        sources
            .iter()
            .enumerate()
            .map(|(a, src)| match src {
                Some(j) => parts[*j][a],
                None => p.f[a],
            })
            .collect()
    }

    fn enumerate(&self, g: &Snapshot<'_>, v: VertexId) -> Result<Vec<VirtualProfile>> {
        enumerate_virtual_profiles(g, v, self.k, self.d, self.replay.bags(), &self.templates)
    }

    fn verify(&self, p: &VirtualProfile, entry: &Entry<Vec<Node>>) -> Result<()> {
        let Some(s) = &entry.solution else {
            return if entry.value == 0 {
                Ok(())
            } else {
                Err(Error::Invariant(format!("null entry of {p} has value {}", entry.value)))
            };
        };
        let gp = ExpandedGraph::new(p, self.replay.graph(), self.replay.bags());
        if !gp.is_solution(s) {
            return Err(Error::Invariant(format!("{s:?} is not a solution of {p}")));
        }
        let direct = gp.value(s, self.sentence);
        if direct != entry.value {
            return Err(Error::Invariant(format!(
                "stored value {} of {p} differs from recomputed {direct}",
                entry.value
            )));
        }
        Ok(())
    }
}

/// `Σ_α #y ψ_α(s, y)` evaluated directly on `g`.
pub fn count_in_graph(g: &Trigraph, sentence: &CountingSentence, s: &[VertexId]) -> u64 {
    let adj = |x: VertexId, y: VertexId| g.is_black(x, y);
    let eq = |x: VertexId, y: VertexId| x == y;
    let mut total = 0;
    for y in g.vertices() {
        let assign = |t: Term| match t {
            Term::X(a) => s[a as usize - 1],
            Term::Y => y,
        };
        total += sentence.psis.iter().filter(|psi| eval_qf(psi, &adj, &eq, &assign)).count() as u64;
    }
    total
}

/// `a ↦ h_a` is an isomorphism from `g[s]` onto `h`.
pub fn realizes(g: &Trigraph, s: &[VertexId], h: &TemplateGraph) -> bool {
    if s.len() != h.k() {
        return false;
    }
    for a in 0..s.len() {
        for b in a + 1..s.len() {
            let (ca, cb) = (h.class_of(a), h.class_of(b));
            if (s[a] == s[b]) != (ca == cb) {
                return false;
            }
            if ca != cb && g.is_black(s[a], s[b]) != h.adjacent(ca, cb) {
                return false;
            }
        }
    }
    true
}

pub fn model_check(g: &Trigraph, c: &ContractionSequence, sentence: &CountingSentence) -> Result<ModelCheckResult> {
    model_check_with(&play_sequence(g, c)?, sentence, SolveOptions::default())
}

/// The core run: the best count over tuples of `k` pairwise distinct vertices.
pub fn model_check_with(replay: &Replay, sentence: &CountingSentence, opts: SolveOptions) -> Result<ModelCheckResult> {
    let k = sentence.k;
    if k > replay.n() {
        return Ok(ModelCheckResult {
            answer: false,
            count: 0,
            witness: None,
            template: None,
            profiles: 0,
        });
    }
    let templates = enumerate_templates(k, false);
    let prog = VirtualProgram {
        replay,
        sentence,
        templates: templates.clone(),
        k,
        d: replay.width(),
    };
    let u = replay.last_vertex();
    let roots: Vec<VirtualProfile> = templates.iter().map(|h| VirtualProfile::root(u, h.clone())).collect();
    let outcome = dp::run(&prog, replay, &roots, opts)?;

    let mut best: Option<(i64, Vec<Node>, &TemplateGraph)> = None;
    for (entry, h) in outcome.roots.iter().zip(&templates) {
        let Some(s) = &entry.solution else { continue };
        if best.as_ref().is_none_or(|(v, _, _)| entry.value >= *v) {
            best = Some((entry.value, s.clone(), h));
        }
    }
    let Some((value, s, h)) = best else {
        return Ok(ModelCheckResult::none(sentence.t, outcome.profiles));
    };
    let g = replay.graph();
    let count = u64::try_from(value).map_err(|_| Error::Invariant("negative count".into()))?;
    if !realizes(g, &s, h) {
        return Err(Error::Invariant(format!("witness {s:?} does not realize {h}")));
    }
    let direct = count_in_graph(g, sentence, &s);
    if direct != count {
        return Err(Error::Invariant(format!("witness {s:?} counts {direct}, reported {count}")));
    }
    Ok(ModelCheckResult {
        answer: count >= sentence.t,
        count,
        witness: Some(s),
        template: Some(h.clone()),
        profiles: outcome.profiles,
    })
}

/// `sentence` with `x_a` renamed to `x_{label[a]}`, over `max(label)` variables.
pub fn identify_variables(sentence: &CountingSentence, label: &[u32]) -> Result<CountingSentence> {
    let c = label.iter().copied().max().unwrap_or(0) as usize;
    let psis = sentence.psis.iter().map(|psi| psi.rename(&|a| label[a as usize - 1])).collect();
    CountingSentence::new(c, psis, sentence.t)
}

/// Standard semantics, where `x1..xk` may repeat: the best core run over all
/// ways of identifying variables.
pub fn model_check_repeats(replay: &Replay, sentence: &CountingSentence, opts: SolveOptions) -> Result<ModelCheckResult> {
    let mut best: Option<ModelCheckResult> = None;
    let mut profiles = 0;
    for label in set_partitions(sentence.k) {
        let c = label.iter().copied().max().unwrap_or(0) as usize;
        if c > replay.n() {
            continue;
        }
        let reduced = identify_variables(sentence, &label)?;
        let run = model_check_with(replay, &reduced, opts)?;
        profiles += run.profiles;
        let (Some(w), Some(h)) = (run.witness, run.template) else { continue };
        if best.as_ref().is_some_and(|b| b.count >= run.count) {
            continue;
        }
        let witness: Vec<VertexId> = label.iter().map(|&cls| w[cls as usize - 1]).collect();
        let template = TemplateGraph {
            label: label.clone(),
            edges: h.edges,
        };
        best = Some(ModelCheckResult {
            answer: run.count >= sentence.t,
            count: run.count,
            witness: Some(witness),
            template: Some(template),
            profiles: 0,
        });
    }
    let mut out = best.unwrap_or_else(|| ModelCheckResult::none(sentence.t, 0));
    out.profiles = profiles;
    if let Some(w) = &out.witness {
        if count_in_graph(replay.graph(), sentence, w) != out.count {
            return Err(Error::Invariant(format!("expanded witness {w:?} miscounts")));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dp::Engine;
    use crate::fixtures::{figure_one_graph, figure_one_sequence};
    use crate::logic::formula::{encode_pds, encode_pvc, parse_sentence};

    fn replay() -> Replay {
        play_sequence(&figure_one_graph(), &figure_one_sequence()).unwrap()
    }

    #[test]
    fn pds_encoding_on_figure_one() {
        let r = model_check(&figure_one_graph(), &figure_one_sequence(), &encode_pds(1).unwrap().with_threshold(5)).unwrap();
        assert_eq!(r.count, 5);
        assert!(r.answer);
        assert_eq!(r.witness, Some(vec![3]));
    }

    #[test]
    fn pvc_encoding_on_figure_one() {
        let r = model_check_with(&replay(), &encode_pvc(2).unwrap(), SolveOptions::checked()).unwrap();
        assert_eq!(r.count, 6);
    }

    #[test]
    fn unsatisfiable_formula() {
        let never = parse_sentence("k 1\nt 0\npsi !(y=y)").unwrap();
        let r = model_check_with(&replay(), &never, SolveOptions::checked()).unwrap();
        assert_eq!(r.count, 0);
        assert!(r.answer);
        let r = model_check_with(&replay(), &never.with_threshold(1), SolveOptions::default()).unwrap();
        assert!(!r.answer);
    }

    #[test]
    fn too_many_variables() {
        let g = Trigraph::edgeless(1);
        let r = play_sequence(&g, &ContractionSequence::from_pairs(1, &[])).unwrap();
        let s = encode_pds(2).unwrap();
        assert!(!model_check_with(&r, &s, SolveOptions::default()).unwrap().answer);
        let rep = model_check_repeats(&r, &s, SolveOptions::default()).unwrap();
        assert_eq!(rep.count, 1);
        assert_eq!(rep.witness, Some(vec![1, 1]));
    }

    #[test]
    fn engines_agree() {
        let r = replay();
        let s = parse_sentence("k 2\nt 0\npsi E(x1,y) & !E(x2,y)\npsi x2=y | E(x1,x2)").unwrap();
        let a = model_check_with(&r, &s, SolveOptions::checked()).unwrap();
        let b = model_check_with(&r, &s, SolveOptions::checked().with_engine(Engine::Sweep)).unwrap();
        assert_eq!(a.count, b.count);
    }

    #[test]
    fn repeats_can_beat_distinct_tuples() {
        let r = replay();
        // x1 = x2 is only satisfiable by a repeated pair.
        let s = parse_sentence("k 2\nt 1\npsi x1=x2 & x1=y").unwrap();
        assert_eq!(model_check_with(&r, &s, SolveOptions::default()).unwrap().count, 0);
        let rep = model_check_repeats(&r, &s, SolveOptions::checked()).unwrap();
        assert_eq!(rep.count, 1);
        assert!(rep.answer);
    }
}
