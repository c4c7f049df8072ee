//! Extended profiles `(T, D, M, f)` shared by the dominating-set and vertex-cover programs.

use std::fmt;

use crate::error::{Error, Result};
use crate::profile::{basic_decompose, check_basic_decomposition, red_connected_sets_bounded, refined_set, BasicProfile, ProfileKey};
use crate::sets;
use crate::trigraph::{BagIndex, ContractionStep, TrigraphView, VertexId};

/// `f` as `(vertex, multiplicity)` pairs sorted by vertex, zeros included.
pub type Assignment = Vec<(VertexId, u32)>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtendedProfile {
    pub t: Vec<VertexId>,
    /// `f(t[i])`, aligned with `t`.
    pub f: Vec<u32>,
    pub m: Vec<VertexId>,
}

impl ExtendedProfile {
    pub fn new(mut assignment: Assignment, mut m: Vec<VertexId>) -> Self {
        assignment.sort_unstable();
        m.sort_unstable();
        m.dedup();
        let (t, f) = assignment.into_iter().unzip();
        ExtendedProfile { t, f, m }
    }

    /// `D`, the support of `f`.
    pub fn d(&self) -> Vec<VertexId> {
        self.t.iter().zip(&self.f).filter(|&(_, &c)| c > 0).map(|(&u, _)| u).collect()
    }

    pub fn mult(&self, u: VertexId) -> u32 {
        self.t.binary_search(&u).map_or(0, |i| self.f[i])
    }

    pub fn total(&self) -> u32 {
        self.f.iter().sum()
    }

    pub fn assignment(&self) -> Assignment {
        self.t.iter().copied().zip(self.f.iter().copied()).collect()
    }

    pub fn basic(&self) -> BasicProfile {
        BasicProfile { t: self.t.clone(), d: self.d() }
    }

    pub fn key(&self) -> ProfileKey {
        let mut out = Vec::with_capacity(1 + 2 * self.t.len() + self.m.len());
        out.push(self.t.len() as u32);
        out.extend_from_slice(&self.t);
        out.extend_from_slice(&self.f);
        out.extend_from_slice(&self.m);
        ProfileKey(out)
    }
}

impl fmt::Display for ExtendedProfile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "(T={:?}, f={:?}, M={:?})", self.t, self.f, self.m)
    }
}

/// A stored subsolution; `set` is `None` for the null marker.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subsolution {
    pub set: Option<Vec<VertexId>>,
    pub value: i64,
}

impl Subsolution {
    /// `(null, -1)`.
    pub fn sentinel() -> Self {
        Subsolution { set: None, value: -1 }
    }
}

/// Checks the extended-profile invariants on top of the basic ones.
pub fn is_extended_profile<G: TrigraphView>(g: &G, p: &ExtendedProfile, k: usize, d: usize, bags: &BagIndex) -> bool {
    p.t.len() == p.f.len()
        && p.t.windows(2).all(|w| w[0] < w[1])
        && p.total() as usize <= k
        && p.t.iter().zip(&p.f).all(|(&u, &c)| c <= bags.size(u))
        && sets::is_subset(&p.m, &p.t)
        && crate::profile::is_basic_profile(g, &p.basic(), k, d)
}

fn assignments(t: &[VertexId], bags: &BagIndex, budget: u32, out: &mut Vec<Vec<u32>>, cur: &mut Vec<u32>) {
    let i = cur.len();
    if i == t.len() {
        out.push(cur.clone());
        return;
    }
    for c in 0..=budget.min(bags.size(t[i])) {
        cur.push(c);
        assignments(t, bags, budget - c, out, cur);
        cur.pop();
    }
}

/// Every extended profile whose `T` contains `v`; with `with_m = false`, `M` is pinned to `∅`.
pub fn enumerate_extended_profiles<G: TrigraphView>(
    g: &G,
    v: VertexId,
    k: usize,
    d: usize,
    bags: &BagIndex,
    with_m: bool,
) -> Result<Vec<ExtendedProfile>> {
    let mut out = Vec::new();
    for t in red_connected_sets_bounded(g, v, k, d)? {
        let mut fs = Vec::new();
        assignments(&t, bags, k as u32, &mut fs, &mut Vec::new());
        let ms = if with_m {
            sets::subsets_up_to(&t, t.len())
        } else {
            vec![Vec::new()]
        };
        for f in fs {
            for m in &ms {
                out.push(ExtendedProfile {
                    t: t.clone(),
                    f: f.clone(),
                    m: m.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// Every `f'` on `T'` compatible with `p` across `step`, ordered by `f'(left)` ascending.
pub fn compatible_functions(p: &ExtendedProfile, step: &ContractionStep, bags: &BagIndex) -> Result<Vec<Assignment>> {
    let Ok(pos) = p.t.binary_search(&step.merged) else {
        return Err(Error::Incompatible(format!("{} is not in T", step.merged)));
    };
    let fv = p.f[pos];
    let (cap1, cap2) = (bags.size(step.left), bags.size(step.right));
    let mut base: Assignment = p.assignment();
    base.remove(pos);
    let mut out = Vec::new();
    for a in 0..=fv.min(cap1) {
        let b = fv - a;
        if b > cap2 {
            continue;
        }
        let mut f = base.clone();
        f.push((step.left, a));
        f.push((step.right, b));
        f.sort_unstable();
        out.push(f);
    }
    Ok(out)
}

/// One `f'`-decomposition together with the sets it was derived from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedDecomposition {
    pub t_prime: Vec<VertexId>,
    pub d_prime: Vec<VertexId>,
    pub m_hat: Vec<VertexId>,
    pub m_prime: Vec<VertexId>,
    pub parts: Vec<ExtendedProfile>,
}

/// `M` with the merged vertex replaced by both parents when present.
pub fn m_hat(m: &[VertexId], step: &ContractionStep) -> Vec<VertexId> {
    let mut out = m.to_vec();
    if sets::remove(&mut out, &step.merged) {
        sets::insert(&mut out, step.left);
        sets::insert(&mut out, step.right);
    }
    out
}

/// True when `u` has a black neighbor in `among`.
pub(crate) fn has_black_neighbor<G: TrigraphView>(g: &G, u: VertexId, among: &[VertexId]) -> bool {
    among.iter().any(|&x| g.is_black(u, x))
}

fn check_assignment(p: &ExtendedProfile, step: &ContractionStep, f_prime: &[(VertexId, u32)], bags: &BagIndex) -> Result<()> {
    let ok = compatible_functions(p, step, bags)?.iter().any(|f| f.as_slice() == f_prime);
    if ok {
        Ok(())
    } else {
        Err(Error::Incompatible(format!("f' = {f_prime:?} for {p}")))
    }
}

/// An `f'`-decomposition of `p` in `g_prev = G_{i-1}`.
pub fn extended_decompose<G: TrigraphView>(
    g_prev: &G,
    p: &ExtendedProfile,
    step: &ContractionStep,
    f_prime: &[(VertexId, u32)],
    bags: &BagIndex,
    k: usize,
    d: usize,
) -> Result<ExtendedDecomposition> {
    check_assignment(p, step, f_prime, bags)?;
    let t_prime = refined_set(&p.t, step)?;
    let d_prime: Vec<VertexId> = f_prime.iter().filter(|&&(_, c)| c > 0).map(|&(u, _)| u).collect();
    let m_hat = m_hat(&p.m, step);
    let m_prime: Vec<VertexId> = m_hat
        .iter()
        .copied()
        .filter(|&u| !has_black_neighbor(g_prev, u, &d_prime))
        .collect();
    let basic = basic_decompose(g_prev, &p.basic(), step, &d_prime, k, d)?;
    let parts = basic
        .into_iter()
        .map(|b| ExtendedProfile {
            f: b.t.iter().map(|&u| f_prime[f_prime.binary_search_by_key(&u, |e| e.0).unwrap()].1).collect(),
            m: sets::intersection(&m_prime, &b.t),
            t: b.t,
        })
        .collect();
    Ok(ExtendedDecomposition {
        t_prime,
        d_prime,
        m_hat,
        m_prime,
        parts,
    })
}

/// Checks the `f'`-decomposition conditions: the basic ones, plus that the
/// parts' `f_j` and `M_j` partition `f'` and `M'`.
pub fn check_extended_decomposition<G: TrigraphView>(
    g_prev: &G,
    dec: &ExtendedDecomposition,
    f_prime: &[(VertexId, u32)],
    k: usize,
    d: usize,
    bags: &BagIndex,
) -> Result<()> {
    let basics: Vec<BasicProfile> = dec.parts.iter().map(ExtendedProfile::basic).collect();
    check_basic_decomposition(g_prev, &dec.t_prime, &dec.d_prime, &basics, k, d)?;
    let mut f_union: Assignment = dec.parts.iter().flat_map(ExtendedProfile::assignment).collect();
    f_union.sort_unstable();
    if f_union != f_prime {
        return Err(Error::Invariant(format!("parts carry f = {f_union:?}, expected {f_prime:?}")));
    }
    let mut m_union: Vec<VertexId> = dec.parts.iter().flat_map(|p| p.m.iter().copied()).collect();
    m_union.sort_unstable();
    if m_union != dec.m_prime {
        return Err(Error::Invariant(format!("parts carry M = {m_union:?}, expected {:?}", dec.m_prime)));
    }
    for part in &dec.parts {
        if !is_extended_profile(g_prev, part, k, d, bags) {
            return Err(Error::Invariant(format!("part {part} is not an extended profile")));
        }
    }
    Ok(())
}

/// `⋃ S_j` over the parts of one decomposition.
pub fn merge_solutions(parts: &[(&ExtendedProfile, &Subsolution)]) -> Result<Vec<VertexId>> {
    let mut out = Vec::new();
    for (p, sol) in parts {
        let Some(set) = &sol.set else {
            return Err(Error::InvalidArgument(format!("part {p} has no solution")));
        };
        out = sets::union(&out, set);
    }
    Ok(out)
}

/// Definition-level check that `s ⊆ β(T)` and `|s ∩ β(u)| = f(u)` for all `u ∈ T`.
pub fn is_solution_of(p: &ExtendedProfile, s: &[VertexId], bags: &BagIndex) -> bool {
    let mut seen = 0;
    for (&u, &c) in p.t.iter().zip(&p.f) {
        let inside = sets::intersection(&bags.members(u), s).len();
        if inside != c as usize {
            return false;
        }
        seen += inside;
    }
    seen == s.len()
}
