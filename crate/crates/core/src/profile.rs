//! Basic profiles `(T, D)` and their decompositions across one contraction step.

use std::fmt;

use crate::error::{Error, Result};
use crate::sets;
use crate::trigraph::{red_connected_sets, ContractionStep, TrigraphView, VertexId};

/// Canonical flat encoding of a profile, used as the table key.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProfileKey(pub Vec<u32>);

/// `T` is red-connected and small; `D ⊆ T` holds the solution mass.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasicProfile {
    pub t: Vec<VertexId>,
    pub d: Vec<VertexId>,
}

impl BasicProfile {
    /// Sorts and deduplicates both sets.
    pub fn new(mut t: Vec<VertexId>, mut d: Vec<VertexId>) -> Self {
        t.sort_unstable();
        t.dedup();
        d.sort_unstable();
        d.dedup();
        BasicProfile { t, d }
    }

    pub fn key(&self) -> ProfileKey {
        let mut out = Vec::with_capacity(1 + self.t.len() + self.d.len());
        out.push(self.t.len() as u32);
        out.extend_from_slice(&self.t);
        out.extend_from_slice(&self.d);
        ProfileKey(out)
    }

    pub fn contains(&self, v: VertexId) -> bool {
        sets::contains(&self.t, &v)
    }
}

impl fmt::Display for BasicProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(T={:?}, D={:?})", self.t, self.d)
    }
}

/// Largest allowed `|T|`.
pub fn size_bound(k: usize, d: usize) -> usize {
    k * (d + 1)
}

/// Every basic profile of `g` whose `T` contains `v`.
///
/// With `k = 0` the size bound is zero and no profile exists.
pub fn enumerate_basic_profiles<G: TrigraphView>(g: &G, v: VertexId, k: usize, d: usize) -> Result<Vec<BasicProfile>> {
    let mut out = Vec::new();
    for t in red_connected_sets_bounded(g, v, k, d)? {
        for d_set in sets::subsets_up_to(&t, k) {
            out.push(BasicProfile { t: t.clone(), d: d_set });
        }
    }
    Ok(out)
}

/// Red-connected sets around `v` of size at most `k(d+1)`; none when `k = 0`.
pub(crate) fn red_connected_sets_bounded<G: TrigraphView>(g: &G, v: VertexId, k: usize, d: usize) -> Result<Vec<Vec<VertexId>>> {
    if !g.is_live(v) {
        return Err(Error::UnknownVertex(v));
    }
    if k == 0 {
        return Ok(Vec::new());
    }
    red_connected_sets(g, v, size_bound(k, d))
}

/// `(T \ {v}) ∪ {u1, u2}`.
pub fn refined_set(t: &[VertexId], step: &ContractionStep) -> Result<Vec<VertexId>> {
    let mut out = t.to_vec();
    if !sets::remove(&mut out, &step.merged) {
        return Err(Error::Incompatible(format!("{} is not in T", step.merged)));
    }
    sets::insert(&mut out, step.left);
    sets::insert(&mut out, step.right);
    Ok(out)
}

/// The sets `D'` compatible with `p` across `step`.
pub fn compatible_d_sets(p: &BasicProfile, step: &ContractionStep, k: usize) -> Result<Vec<Vec<VertexId>>> {
    if !p.contains(step.merged) {
        return Err(Error::Incompatible(format!("{} is not in T", step.merged)));
    }
    let mut rest = p.d.clone();
    let had_v = sets::remove(&mut rest, &step.merged);
    let choices: &[&[VertexId]] = if had_v {
        &[&[step.left], &[step.right], &[step.left, step.right]]
    } else {
        &[&[]]
    };
    Ok(choices
        .iter()
        .map(|extra| {
            let mut d = rest.clone();
            for &x in *extra {
                sets::insert(&mut d, x);
            }
            d
        })
        .filter(|d| d.len() <= k)
        .collect())
}

fn is_compatible(p: &BasicProfile, step: &ContractionStep, d_prime: &[VertexId], k: usize) -> bool {
    let mut rest = p.d.clone();
    let had_v = sets::remove(&mut rest, &step.merged);
    let mut rest_prime = d_prime.to_vec();
    let hit1 = sets::remove(&mut rest_prime, &step.left);
    let hit2 = sets::remove(&mut rest_prime, &step.right);
    rest == rest_prime && d_prime.len() <= k && had_v == (hit1 || hit2)
}

/// Red-connected components of `within` in `g`, each sorted, ordered by smallest vertex.
pub(crate) fn red_components<G: TrigraphView>(g: &G, within: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut seen = vec![false; within.len()];
    let mut out = Vec::new();
    for start in 0..within.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut comp = vec![within[start]];
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..within.len() {
                if !seen[j] && g.is_red(within[i], within[j]) {
                    seen[j] = true;
                    comp.push(within[j]);
                    stack.push(j);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out.sort();
    out
}

fn with_d(components: Vec<Vec<VertexId>>, d_prime: &[VertexId]) -> Vec<BasicProfile> {
    components
        .into_iter()
        .map(|t| {
            let d = sets::intersection(&t, d_prime);
            BasicProfile { t, d }
        })
        .collect()
}

/// A `D'`-decomposition of `p` in `g_prev = G_{i-1}`.
///
/// Parts are the red components of `T'`. If `T'` is one component of size
/// `k(d+1)+1`, the smallest `w ∉ D'` without a red edge to `D'` is split off
/// as `({w}, ∅)` and the rest is decomposed again.
pub fn basic_decompose<G: TrigraphView>(
    g_prev: &G,
    p: &BasicProfile,
    step: &ContractionStep,
    d_prime: &[VertexId],
    k: usize,
    d: usize,
) -> Result<Vec<BasicProfile>> {
    if !p.contains(step.merged) || !is_compatible(p, step, d_prime, k) {
        return Err(Error::Incompatible(format!("D' = {d_prime:?} for {p}")));
    }
    let t_prime = refined_set(&p.t, step)?;
    let bound = size_bound(k, d);
    let components = red_components(g_prev, &t_prime);
    if components.iter().all(|c| c.len() <= bound) {
        return Ok(with_d(components, d_prime));
    }
    if components.len() != 1 || components[0].len() != bound + 1 {
        return Err(Error::Invariant(format!(
            "component of size {} exceeds k(d+1) + 1 = {} for {p}",
            components.iter().map(Vec::len).max().unwrap_or(0),
            bound + 1
        )));
    }
    let w = t_prime
        .iter()
        .copied()
        .find(|&w| !sets::contains(d_prime, &w) && d_prime.iter().all(|&x| !g_prev.is_red(w, x)))
        .ok_or_else(|| Error::Invariant(format!("no vertex to split off for {p}")))?;
    let rest = sets::difference(&t_prime, &[w]);
    let mut parts = with_d(red_components(g_prev, &rest), d_prime);
    parts.push(BasicProfile { t: vec![w], d: Vec::new() });
    parts.sort_by_key(|part| part.t[0]);
    Ok(parts)
}

/// True when `T` is nonempty, live, red-connected and within the size bounds.
pub fn is_basic_profile<G: TrigraphView>(g: &G, p: &BasicProfile, k: usize, d: usize) -> bool {
    !p.t.is_empty()
        && p.t.len() <= size_bound(k, d)
        && p.d.len() <= k
        && sets::is_subset(&p.d, &p.t)
        && p.t.iter().all(|&u| g.is_live(u))
        && red_components(g, &p.t).len() == 1
}

/// Checks every defining condition of a `D'`-decomposition plus the `d + 2` part bound.
pub fn check_basic_decomposition<G: TrigraphView>(
    g_prev: &G,
    t_prime: &[VertexId],
    d_prime: &[VertexId],
    parts: &[BasicProfile],
    k: usize,
    d: usize,
) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(what));
    if parts.len() > d + 2 {
        return fail(format!("{} parts exceed d + 2 = {}", parts.len(), d + 2));
    }
    let mut covered: Vec<VertexId> = parts.iter().flat_map(|p| p.t.iter().copied()).collect();
    covered.sort_unstable();
    let total = covered.len();
    covered.dedup();
    if covered.len() != total {
        return fail("parts overlap".into());
    }
    if covered != t_prime {
        return fail(format!("parts cover {covered:?}, expected {t_prime:?}"));
    }
    let mut ds: Vec<VertexId> = parts.iter().flat_map(|p| p.d.iter().copied()).collect();
    ds.sort_unstable();
    if ds != d_prime {
        return fail(format!("parts hold D = {ds:?}, expected {d_prime:?}"));
    }
    for (j, pj) in parts.iter().enumerate() {
        if !is_basic_profile(g_prev, pj, k, d) {
            return fail(format!("part {pj} is not a basic profile"));
        }
        if pj.d != sets::intersection(&pj.t, d_prime) {
            return fail(format!("part {pj} does not hold T ∩ D'"));
        }
        for (l, pl) in parts.iter().enumerate() {
            if j == l {
                continue;
            }
            for &x in &pj.t {
                if let Some(&y) = pl.d.iter().find(|&&y| g_prev.is_red(x, y)) {
                    return fail(format!("red edge {x}-{y} between parts"));
                }
            }
        }
    }
    Ok(())
}
