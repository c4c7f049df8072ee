//! The shared dynamic-programming driver.
//!
//! A [`Program`] describes one profile family: how a profile at the step that
//! created its newest vertex splits into candidate decompositions, how leaf
//! profiles are valued, and how part solutions combine. The driver evaluates
//! the program either bottom-up over every profile ([`Engine::Sweep`]) or only
//! over profiles reachable from the final ones ([`Engine::OnDemand`]). Both
//! store one value per profile key: a profile that does not contain the newest
//! vertex keeps its value from earlier steps.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::profile::ProfileKey;
use crate::trigraph::{ContractionStep, Replay, Snapshot, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Process every step in order, enumerating all profiles around the new vertex.
    Sweep,
    /// Evaluate only profiles reachable from the final ones through decompositions.
    #[default]
    OnDemand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SolveOptions {
    pub engine: Engine,
    /// Assert decomposition and solution invariants while solving.
    pub check: bool,
}

impl SolveOptions {
    pub fn checked() -> Self {
        SolveOptions {
            check: true,
            ..Default::default()
        }
    }

    pub fn with_engine(self, engine: Engine) -> Self {
        SolveOptions { engine, ..self }
    }
}

/// A stored subsolution; `solution` is `None` for null.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry<S> {
    pub solution: Option<S>,
    pub value: i64,
}

/// The single table `σ`, keyed independently of the step index.
#[derive(Debug, Clone)]
pub struct Table<S> {
    entries: HashMap<ProfileKey, Entry<S>>,
}

impl<S> Default for Table<S> {
    fn default() -> Self {
        Table { entries: HashMap::new() }
    }
}

impl<S> Table<S> {
    pub fn get(&self, key: &ProfileKey) -> Option<&Entry<S>> {
        self.entries.get(key)
    }

    pub fn insert(&mut self, key: ProfileKey, entry: Entry<S>) {
        self.entries.insert(key, entry);
    }

    pub fn remove(&mut self, key: &ProfileKey) -> Option<Entry<S>> {
        self.entries.remove(key)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// One decomposition of a profile: the parts, a value added on top of the
/// parts' values, and whatever the program needs to combine part solutions.
pub struct Candidate<P, R> {
    pub parts: Vec<P>,
    pub extra: i64,
    pub recipe: R,
}

pub trait Program {
    type Profile: Clone + fmt::Display;
    type Solution: Clone;
    type Recipe;

    fn key(&self, p: &Self::Profile) -> ProfileKey;

    /// The sorted vertex set `T`.
    fn tee<'a>(&self, p: &'a Self::Profile) -> &'a [VertexId];

    /// The value a profile starts from before any decomposition is tried.
    fn sentinel(&self) -> Entry<Self::Solution>;

    /// Whether a decomposition worth `value` replaces `current`.
    fn replaces(&self, value: i64, current: &Entry<Self::Solution>) -> bool;

    /// Value of a profile whose `T` is a single original vertex.
    fn leaf(&self, p: &Self::Profile) -> Entry<Self::Solution>;

    /// Every decomposition of `p` across `step`, whose merged vertex is the newest in `T`.
    fn candidates(
        &self,
        g_prev: &Snapshot<'_>,
        step: &ContractionStep,
        p: &Self::Profile,
        check: bool,
    ) -> Result<Vec<Candidate<Self::Profile, Self::Recipe>>>;

    fn combine(&self, p: &Self::Profile, recipe: &Self::Recipe, parts: &[&Self::Solution]) -> Self::Solution;

    /// Every profile of `g` containing `v`; used by the sweep engine.
    fn enumerate(&self, g: &Snapshot<'_>, v: VertexId) -> Result<Vec<Self::Profile>>;

    /// Definition-level check of a stored entry, run in check mode.
    fn verify(&self, _p: &Self::Profile, _entry: &Entry<Self::Solution>) -> Result<()> {
        Ok(())
    }
}

/// Entries for `roots` plus the number of distinct profiles evaluated.
pub struct Outcome<S> {
    pub roots: Vec<Entry<S>>,
    pub profiles: usize,
}

pub fn run<P: Program>(prog: &P, replay: &Replay, roots: &[P::Profile], opts: SolveOptions) -> Result<Outcome<P::Solution>> {
    match opts.engine {
        Engine::Sweep => sweep(prog, replay, roots, opts.check),
        Engine::OnDemand => on_demand(prog, replay, roots, opts.check),
    }
}

fn top<P: Program>(prog: &P, p: &P::Profile) -> VertexId {
    *prog.tee(p).last().expect("profiles have nonempty T")
}

/// Folds the candidates of one profile into its entry.
fn best<'s, P, I>(prog: &P, p: &P::Profile, candidates: I) -> Entry<P::Solution>
where
    P: Program,
    P::Solution: 's,
    I: IntoIterator<Item = (&'s P::Recipe, i64, Vec<&'s Entry<P::Solution>>)>,
    P::Recipe: 's,
{
    let mut entry = prog.sentinel();
    'next: for (recipe, extra, parts) in candidates {
        let mut value = extra;
        let mut sols = Vec::with_capacity(parts.len());
        for part in parts {
            match &part.solution {
                Some(s) => sols.push(s),
                None => continue 'next,
            }
            value += part.value;
        }
        if prog.replaces(value, &entry) {
            entry = Entry {
                solution: Some(prog.combine(p, recipe, &sols)),
                value,
            };
        }
    }
    entry
}

fn leaf_checked<P: Program>(prog: &P, replay: &Replay, p: &P::Profile) -> Result<Entry<P::Solution>> {
    let t = prog.tee(p);
    if t.len() != 1 || t[0] as usize > replay.n() {
        return Err(Error::Invariant(format!("profile {p} has no decomposition and is not a leaf")));
    }
    Ok(prog.leaf(p))
}

struct Node<R> {
    candidates: Vec<(R, i64, Vec<u32>)>,
}

fn on_demand<P: Program>(prog: &P, replay: &Replay, roots: &[P::Profile], check: bool) -> Result<Outcome<P::Solution>> {
    let n = replay.n() as VertexId;
    let mut index: HashMap<ProfileKey, u32> = HashMap::new();
    let mut arena: Vec<P::Profile> = Vec::new();
    let mut intern = |p: P::Profile, arena: &mut Vec<P::Profile>| -> u32 {
        *index.entry(prog.key(&p)).or_insert_with(|| {
            arena.push(p);
            (arena.len() - 1) as u32
        })
    };
    let root_ids: Vec<u32> = roots.iter().map(|p| intern(p.clone(), &mut arena)).collect();

    let mut nodes: Vec<Node<P::Recipe>> = Vec::new();
    while nodes.len() < arena.len() {
        let p = arena[nodes.len()].clone();
        let newest = top(prog, &p);
        let mut node = Node { candidates: Vec::new() };
        if newest > n {
            let s = (newest - n) as usize;
            let g_prev = replay.snapshot(s);
            for cand in prog.candidates(&g_prev, replay.step(s), &p, check)? {
                let parts = cand.parts.into_iter().map(|q| intern(q, &mut arena)).collect();
                node.candidates.push((cand.recipe, cand.extra, parts));
            }
        }
        nodes.push(node);
    }

    let mut order: Vec<u32> = (0..arena.len() as u32).collect();
    order.sort_by_key(|&i| top(prog, &arena[i as usize]));
    let mut entries: Vec<Option<Entry<P::Solution>>> = vec![None; arena.len()];
    for i in order {
        let p = &arena[i as usize];
        let entry = if top(prog, p) <= n {
            leaf_checked(prog, replay, p)?
        } else {
            let node = &nodes[i as usize];
            let mut cands = Vec::with_capacity(node.candidates.len());
            for (recipe, extra, parts) in &node.candidates {
                let mut got = Vec::with_capacity(parts.len());
                for &j in parts {
                    let e = entries[j as usize]
                        .as_ref()
                        .ok_or_else(|| Error::Invariant(format!("part {} evaluated after {p}", arena[j as usize])))?;
                    got.push(e);
                }
                cands.push((recipe, *extra, got));
            }
            best(prog, p, cands)
        };
        if check {
            prog.verify(p, &entry)?;
        }
        entries[i as usize] = Some(entry);
    }
    let profiles = arena.len();
    let roots = root_ids
        .into_iter()
        .map(|i| entries[i as usize].take().expect("every profile is evaluated"))
        .collect();
    Ok(Outcome { roots, profiles })
}

fn sweep<P: Program>(prog: &P, replay: &Replay, roots: &[P::Profile], check: bool) -> Result<Outcome<P::Solution>> {
    let n = replay.n();
    let mut table: Table<P::Solution> = Table::default();
    let mut evaluated = 0;
    let g1 = replay.snapshot(1);
    for v in 1..=n as VertexId {
        for p in prog.enumerate(&g1, v)? {
            let entry = leaf_checked(prog, replay, &p)?;
            if check {
                prog.verify(&p, &entry)?;
            }
            table.insert(prog.key(&p), entry);
            evaluated += 1;
        }
    }
    for time in 2..=n {
        let s = time - 1;
        let step = replay.step(s);
        let g_now = replay.snapshot(time);
        let g_prev = replay.snapshot(s);
        let mut fresh = Vec::new();
        for p in prog.enumerate(&g_now, step.merged)? {
            let cands = prog.candidates(&g_prev, step, &p, check)?;
            let mut resolved = Vec::with_capacity(cands.len());
            for cand in &cands {
                let mut got = Vec::with_capacity(cand.parts.len());
                for q in &cand.parts {
                    let e = table
                        .get(&prog.key(q))
                        .ok_or_else(|| Error::Invariant(format!("part {q} of {p} missing from the table")))?;
                    got.push(e);
                }
                resolved.push((&cand.recipe, cand.extra, got));
            }
            let entry = best(prog, &p, resolved);
            if check {
                prog.verify(&p, &entry)?;
            }
            fresh.push((prog.key(&p), entry));
        }
        for u in [step.left, step.right] {
            for q in prog.enumerate(&g_prev, u)? {
                table.remove(&prog.key(&q));
            }
        }
        evaluated += fresh.len();
        for (key, entry) in fresh {
            table.insert(key, entry);
        }
    }
    let roots = roots
        .iter()
        .map(|p| {
            table
                .get(&prog.key(p))
                .cloned()
                .ok_or_else(|| Error::Invariant(format!("final profile {p} missing from the table")))
        })
        .collect::<Result<_>>()?;
    Ok(Outcome {
        roots,
        profiles: evaluated,
    })
}
