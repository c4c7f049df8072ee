//! The extended-profile program behind both partial problems.

use crate::dp::{self, Candidate, Entry, Program, SolveOptions};
use crate::error::{Error, Result};
use crate::extended::{
    check_extended_decomposition, compatible_functions, enumerate_extended_profiles, extended_decompose, is_solution_of,
    ExtendedDecomposition, ExtendedProfile,
};
use crate::pds::compute_cj;
use crate::pvc::cross_value;
use crate::sets;
use crate::trigraph::{ContractionStep, Replay, Snapshot, TrigraphView, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Objective {
    Domination,
    Cover,
}

/// Outcome of a partial dominating set or partial vertex cover run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialResult {
    pub feasible: bool,
    /// `None` when `k > n`, where no size-`k` set exists.
    pub best_value: Option<u64>,
    /// `k` original vertices, ascending.
    pub witness: Option<Vec<VertexId>>,
    /// Distinct profiles evaluated.
    pub profiles: usize,
}

pub(crate) struct PartialProgram<'a> {
    pub objective: Objective,
    pub replay: &'a Replay,
    pub k: usize,
    pub d: usize,
}

impl PartialProgram<'_> {
    fn with_m(&self) -> bool {
        self.objective == Objective::Domination
    }

    fn check_cj(&self, dec: &ExtendedDecomposition, cj: &[Vec<VertexId>]) -> Result<()> {
        let mut c_all = Vec::new();
        for (part, c) in dec.parts.iter().zip(cj) {
            if !sets::intersection(&part.m, c).is_empty() {
                return Err(Error::Invariant(format!("M_j and C_j overlap in {part}")));
            }
            c_all = sets::union(&c_all, c);
        }
        if sets::union(&c_all, &dec.m_prime) != dec.m_hat {
            return Err(Error::Invariant("M' and C do not partition the refined M".into()));
        }
        Ok(())
    }

    /// Value of `s` in `p` recomputed on the input graph.
    pub(crate) fn definitional_value(&self, p: &ExtendedProfile, s: &[VertexId]) -> u64 {
        let g = self.replay.graph();
        let bags = self.replay.bags();
        match self.objective {
            Objective::Domination => bags
                .members_of(&p.m)
                .into_iter()
                .filter(|&x| s.iter().any(|&y| x == y || g.is_black(x, y)))
                .count() as u64,
            Objective::Cover => {
                let inside = bags.members_of(&p.t);
                let mut count = 0;
                for &x in &inside {
                    for &y in &inside {
                        if x < y && g.is_black(x, y) && (sets::contains(s, &x) || sets::contains(s, &y)) {
                            count += 1;
                        }
                    }
                }
                count
            }
        }
    }
}

impl Program for PartialProgram<'_> {
    type Profile = ExtendedProfile;
    type Solution = Vec<VertexId>;
    type Recipe = ();

    fn key(&self, p: &ExtendedProfile) -> crate::profile::ProfileKey {
        p.key()
    }

    fn tee<'a>(&self, p: &'a ExtendedProfile) -> &'a [VertexId] {
        &p.t
    }

    fn sentinel(&self) -> Entry<Vec<VertexId>> {
        Entry {
            solution: None,
            value: -1,
        }
    }

    fn replaces(&self, value: i64, current: &Entry<Vec<VertexId>>) -> bool {
        value > current.value
    }

    fn leaf(&self, p: &ExtendedProfile) -> Entry<Vec<VertexId>> {
        let d = p.d();
        let value = match self.objective {
            Objective::Domination => sets::intersection(&d, &p.m).len() as i64,
            Objective::Cover => 0,
        };
        Entry {
            solution: Some(d),
            value,
        }
    }

    fn candidates(
        &self,
        g_prev: &Snapshot<'_>,
        step: &ContractionStep,
        p: &ExtendedProfile,
        check: bool,
    ) -> Result<Vec<Candidate<ExtendedProfile, ()>>> {
        let bags = self.replay.bags();
        let mut out = Vec::new();
        for f_prime in compatible_functions(p, step, bags)? {
            let dec = extended_decompose(g_prev, p, step, &f_prime, bags, self.k, self.d)?;
            if check {
                check_extended_decomposition(g_prev, &dec, &f_prime, self.k, self.d, bags)?;
            }
            let extra = match self.objective {
                Objective::Domination => {
                    let cj = compute_cj(&dec.parts, &dec.m_hat, g_prev);
                    if check {
                        self.check_cj(&dec, &cj)?;
                    }
                    cj.iter().map(|c| bags.total(c) as i64).sum()
                }
                Objective::Cover => {
                    let mut sum = 0;
                    for (j, pj) in dec.parts.iter().enumerate() {
                        for pl in &dec.parts[j + 1..] {
                            sum += cross_value(pj, pl, g_prev, bags);
                        }
                    }
                    sum
                }
            };
            out.push(Candidate {
                parts: dec.parts,
                extra,
                recipe: (),
            });
        }
        Ok(out)
    }

    fn combine(&self, _p: &ExtendedProfile, _recipe: &(), parts: &[&Vec<VertexId>]) -> Vec<VertexId> {
        parts.iter().fold(Vec::new(), |acc, s| sets::union(&acc, s))
    }

    fn enumerate(&self, g: &Snapshot<'_>, v: VertexId) -> Result<Vec<ExtendedProfile>> {
        enumerate_extended_profiles(g, v, self.k, self.d, self.replay.bags(), self.with_m())
    }

    fn verify(&self, p: &ExtendedProfile, entry: &Entry<Vec<VertexId>>) -> Result<()> {
        let Some(s) = &entry.solution else {
            return Err(Error::Invariant(format!("profile {p} has no solution")));
        };
        if !is_solution_of(p, s, self.replay.bags()) {
            return Err(Error::Invariant(format!("{s:?} is not a solution of {p}")));
        }
        let recomputed = self.definitional_value(p, s);
        if recomputed as i64 != entry.value {
            return Err(Error::Invariant(format!(
                "stored value {} of {p} differs from recomputed {recomputed}",
                entry.value
            )));
        }
        Ok(())
    }
}

/// Runs the program for `objective` with target `t` on a replayed sequence.
pub(crate) fn solve(objective: Objective, replay: &Replay, k: usize, t: u64, opts: SolveOptions) -> Result<PartialResult> {
    let n = replay.n();
    if k > n {
        return Ok(PartialResult {
            feasible: false,
            best_value: None,
            witness: None,
            profiles: 0,
        });
    }
    if k == 0 {
        return Ok(PartialResult {
            feasible: t == 0,
            best_value: Some(0),
            witness: Some(Vec::new()),
            profiles: 0,
        });
    }
    let prog = PartialProgram {
        objective,
        replay,
        k,
        d: replay.width(),
    };
    let u = replay.last_vertex();
    let m = if prog.with_m() { vec![u] } else { Vec::new() };
    let root = ExtendedProfile::new(vec![(u, k as u32)], m);
    let outcome = dp::run(&prog, replay, std::slice::from_ref(&root), opts)?;
    let entry = &outcome.roots[0];
    let witness = entry
        .solution
        .clone()
        .ok_or_else(|| Error::Invariant("final profile has no solution".into()))?;
    let value = u64::try_from(entry.value).map_err(|_| Error::Invariant("negative final value".into()))?;
    let direct = match objective {
        Objective::Domination => crate::oracle::closed_neighborhood_size(replay.graph(), &witness),
        Objective::Cover => crate::oracle::covered_edges(replay.graph(), &witness),
    };
    if witness.len() != k || direct != value {
        return Err(Error::Invariant(format!(
            "witness {witness:?} reaches {direct}, reported {value}"
        )));
    }
    Ok(PartialResult {
        feasible: value >= t,
        best_value: Some(value),
        witness: Some(witness),
        profiles: outcome.profiles,
    })
}
