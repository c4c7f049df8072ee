//! Virtual profiles `(T, D, 𝒱, ℰ, f, H)`.
//!
//! Virtual vertices are named after template classes: the virtual vertex
//! standing in for `x_a` is `virtual_node(class(a))`, so two variables share a
//! virtual vertex exactly when the template identifies them.

use std::collections::HashMap;
use std::fmt;

use super::formula::{eval_qf, CountingSentence, Term};
use super::template::TemplateGraph;
use crate::error::{Error, Result};
use crate::profile::{basic_decompose, check_basic_decomposition, is_basic_profile, red_connected_sets_bounded, refined_set, BasicProfile, ProfileKey};
use crate::sets;
use crate::trigraph::{BagIndex, ContractionStep, Trigraph, TrigraphView, VertexId};

/// A vertex of an expanded graph: an original or merged vertex id, or a virtual vertex.
pub type Node = u32;

pub const VIRTUAL_BASE: Node = 1 << 31;

pub fn virtual_node(class: u32) -> Node {
    VIRTUAL_BASE + class
}

pub fn is_virtual(x: Node) -> bool {
    x >= VIRTUAL_BASE
}

fn pair(x: Node, y: Node) -> (Node, Node) {
    if x < y {
        (x, y)
    } else {
        (y, x)
    }
}

fn show(x: Node) -> String {
    if is_virtual(x) {
        format!("h{}", x - VIRTUAL_BASE)
    } else {
        x.to_string()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VirtualProfile {
    pub t: Vec<VertexId>,
    pub d: Vec<VertexId>,
    /// Sorted virtual vertices.
    pub virtuals: Vec<Node>,
    /// Sorted pairs `(x, w)` with `x < w` and `w` virtual.
    pub edges: Vec<(Node, Node)>,
    /// `f(a+1)` at index `a`.
    pub f: Vec<Node>,
    pub h: TemplateGraph,
}

impl VirtualProfile {
    /// `({u}, {u}, ∅, ∅, a ↦ u, H)`.
    pub fn root(u: VertexId, h: TemplateGraph) -> Self {
        VirtualProfile {
            t: vec![u],
            d: vec![u],
            virtuals: Vec::new(),
            edges: Vec::new(),
            f: vec![u; h.k()],
            h,
        }
    }

    pub fn k(&self) -> usize {
        self.f.len()
    }

    pub fn basic(&self) -> BasicProfile {
        BasicProfile {
            t: self.t.clone(),
            d: self.d.clone(),
        }
    }

    pub fn has_edge(&self, x: Node, y: Node) -> bool {
        self.edges.binary_search(&pair(x, y)).is_ok()
    }

    pub fn key(&self) -> ProfileKey {
        let mut out = Vec::with_capacity(4 + self.t.len() + self.d.len() + self.f.len() + 2 * self.edges.len() + 8);
        out.push(self.t.len() as u32);
        out.extend_from_slice(&self.t);
        out.push(self.d.len() as u32);
        out.extend_from_slice(&self.d);
        out.extend_from_slice(&self.f);
        out.push(self.edges.len() as u32);
        for &(x, y) in &self.edges {
            out.push(x);
            out.push(y);
        }
        self.h.encode(&mut out);
        ProfileKey(out)
    }
}

impl fmt::Display for VirtualProfile {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let f: Vec<String> = self.f.iter().map(|&x| show(x)).collect();
        let v: Vec<String> = self.virtuals.iter().map(|&x| show(x)).collect();
        let e: Vec<String> = self.edges.iter().map(|&(x, y)| format!("{}{}", show(x), show(y))).collect();
        write!(
            out,
            "(T={:?}, D={:?}, V=[{}], E=[{}], f=[{}], {})",
            self.t,
            self.d,
            v.join(","),
            e.join(","),
            f.join(","),
            self.h
        )
    }
}

/// A stored solution: `s` is `None` for null.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualSolution {
    pub s: Option<Vec<Node>>,
    pub value: i64,
}

/// Checks every invariant of a virtual profile, including the naming rule for virtual vertices.
pub fn is_virtual_profile<G: TrigraphView>(g: &G, p: &VirtualProfile, k: usize, d: usize, bags: &BagIndex) -> bool {
    if p.f.len() != k || p.h.k() != k || !is_basic_profile(g, &p.basic(), k, d) {
        return false;
    }
    if !p.virtuals.windows(2).all(|w| w[0] < w[1]) || !p.virtuals.iter().all(|&w| is_virtual(w)) || p.virtuals.len() > k {
        return false;
    }
    let mut hit_real = Vec::new();
    let mut hit_virtual = Vec::new();
    for (a, &x) in p.f.iter().enumerate() {
        if is_virtual(x) {
            if x != virtual_node(p.h.class_of(a)) {
                return false;
            }
            sets::insert(&mut hit_virtual, x);
        } else {
            sets::insert(&mut hit_real, x);
        }
    }
    if hit_real != p.d || hit_virtual != p.virtuals {
        return false;
    }
    for &u in &p.d {
        if p.f.iter().filter(|&&x| x == u).count() > bags.size(u) as usize {
            return false;
        }
    }
    p.edges.windows(2).all(|w| w[0] < w[1])
        && p.edges.iter().all(|&(x, w)| {
            x < w
                && sets::contains(&p.virtuals, &w)
                && (sets::contains(&p.virtuals, &x) || sets::contains(&p.t, &x))
        })
}

fn targets(p_t: &[VertexId], h: &TemplateGraph, a: usize, out: &mut Vec<Vec<Node>>, cur: &mut Vec<Node>) {
    if a == h.k() {
        out.push(cur.clone());
        return;
    }
    for &u in p_t {
        cur.push(u);
        targets(p_t, h, a + 1, out, cur);
        cur.pop();
    }
    cur.push(virtual_node(h.class_of(a)));
    targets(p_t, h, a + 1, out, cur);
    cur.pop();
}

/// Every virtual profile whose `T` contains `v`, over the given templates.
pub fn enumerate_virtual_profiles<G: TrigraphView>(
    g: &G,
    v: VertexId,
    k: usize,
    d: usize,
    bags: &BagIndex,
    templates: &[TemplateGraph],
) -> Result<Vec<VirtualProfile>> {
    let mut out = Vec::new();
    for t in red_connected_sets_bounded(g, v, k, d)? {
        for h in templates {
            let mut fs = Vec::new();
            targets(&t, h, 0, &mut fs, &mut Vec::new());
            for f in fs {
                let mut real: Vec<VertexId> = f.iter().copied().filter(|&x| !is_virtual(x)).collect();
                real.sort_unstable();
                let over = real.chunk_by(|a, b| a == b).any(|run| run.len() > bags.size(run[0]) as usize);
                if over {
                    continue;
                }
                real.dedup();
                let mut virtuals: Vec<Node> = f.iter().copied().filter(|&x| is_virtual(x)).collect();
                virtuals.sort_unstable();
                virtuals.dedup();
                let mut slots: Vec<(Node, Node)> = Vec::new();
                for (i, &w) in virtuals.iter().enumerate() {
                    slots.extend(t.iter().map(|&x| (x, w)));
                    slots.extend(virtuals[..i].iter().map(|&x| (x, w)));
                }
                slots.sort_unstable();
                for mask in 0..1u64 << slots.len() {
                    let edges = slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
                    out.push(VirtualProfile {
                        t: t.clone(),
                        d: real.clone(),
                        virtuals: virtuals.clone(),
                        edges,
                        f: f.clone(),
                        h: h.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Every `f'` compatible with `p` across `step` that respects the parents' bag sizes.
///
/// Variables mapped to the merged vertex choose `left` or `right`; earlier
/// variables vary slowest and `left` comes first.
pub fn virtual_compatible_functions(p: &VirtualProfile, step: &ContractionStep, bags: &BagIndex) -> Result<Vec<Vec<Node>>> {
    if !sets::contains(&p.t, &step.merged) {
        return Err(Error::Incompatible(format!("{} is not in T", step.merged)));
    }
    let on_v: Vec<usize> = (0..p.k()).filter(|&a| p.f[a] == step.merged).collect();
    let (cap1, cap2) = (bags.size(step.left) as usize, bags.size(step.right) as usize);
    let mut out = Vec::new();
    for code in 0..1u64 << on_v.len() {
        let mut f = p.f.clone();
        let mut right = 0;
        for (i, &a) in on_v.iter().enumerate() {
            let bit = code >> (on_v.len() - 1 - i) & 1;
            f[a] = if bit == 0 { step.left } else { step.right };
            right += bit as usize;
        }
        if on_v.len() - right <= cap1 && right <= cap2 {
            out.push(f);
        }
    }
    Ok(out)
}

/// One `f'`-decomposition. `sources[a]` is the part whose `D_j` holds `f'(a)`,
/// `None` when `f'(a)` is virtual.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VirtualDecomposition {
    pub t_prime: Vec<VertexId>,
    pub d_prime: Vec<VertexId>,
    pub e_prime: Vec<(Node, Node)>,
    pub parts: Vec<VirtualProfile>,
    pub sources: Vec<Option<usize>>,
}

/// `ℰ'`: edges at the merged vertex are copied to both parents.
pub fn refine_edges(edges: &[(Node, Node)], step: &ContractionStep) -> Vec<(Node, Node)> {
    let mut out = Vec::with_capacity(edges.len() + 2);
    for &(x, w) in edges {
        if x == step.merged {
            out.push(pair(step.left, w));
            out.push(pair(step.right, w));
        } else {
            out.push((x, w));
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// An `f'`-decomposition of `p` in `g_prev = G_{i-1}`.
pub fn virtual_decompose<G: TrigraphView>(
    g_prev: &G,
    p: &VirtualProfile,
    step: &ContractionStep,
    f_prime: &[Node],
    bags: &BagIndex,
    k: usize,
    d: usize,
) -> Result<VirtualDecomposition> {
    if !virtual_compatible_functions(p, step, bags)?.iter().any(|f| f.as_slice() == f_prime) {
        return Err(Error::Incompatible(format!("f' for {p}")));
    }
    let t_prime = refined_set(&p.t, step)?;
    let e_prime = refine_edges(&p.edges, step);
    let mut d_prime: Vec<VertexId> = f_prime.iter().copied().filter(|&x| !is_virtual(x)).collect();
    d_prime.sort_unstable();
    d_prime.dedup();
    let basics = basic_decompose(g_prev, &p.basic(), step, &d_prime, k, d)?;

    let mut sources = vec![None; p.k()];
    let mut parts = Vec::with_capacity(basics.len());
    for (j, b) in basics.into_iter().enumerate() {
        let new_vars: Vec<usize> = (0..p.k())
            .filter(|&a| !is_virtual(f_prime[a]) && !sets::contains(&b.d, &f_prime[a]))
            .collect();
        let h_of = |a: usize| virtual_node(p.h.class_of(a));
        let mut virtuals = p.virtuals.clone();
        for &a in &new_vars {
            sets::insert(&mut virtuals, h_of(a));
        }
        let f: Vec<Node> = (0..p.k())
            .map(|a| {
                let x = f_prime[a];
                if is_virtual(x) || sets::contains(&b.d, &x) {
                    x
                } else {
                    h_of(a)
                }
            })
            .collect();
        for a in 0..p.k() {
            if sets::contains(&b.d, &f_prime[a]) {
                sources[a] = Some(j);
            }
        }
        let in_scope = |x: Node| sets::contains(&p.virtuals, &x) || sets::contains(&b.t, &x);
        let mut edges: Vec<(Node, Node)> = e_prime.iter().copied().filter(|&(x, w)| in_scope(x) && in_scope(w)).collect();
        let scope: Vec<Node> = p.virtuals.iter().chain(&b.t).copied().collect();
        for &x in &scope {
            for &a in &new_vars {
                let w = f_prime[a];
                let linked = if is_virtual(x) {
                    e_prime.binary_search(&pair(w, x)).is_ok()
                } else {
                    g_prev.is_black(x, w)
                };
                if linked && x != h_of(a) {
                    edges.push(pair(x, h_of(a)));
                }
            }
        }
        for &a in &new_vars {
            for &c in &new_vars {
                let (ca, cc) = (p.h.class_of(a), p.h.class_of(c));
                if ca < cc && p.h.adjacent(ca, cc) {
                    edges.push(pair(h_of(a), h_of(c)));
                }
            }
        }
        edges.sort_unstable();
        edges.dedup();
        parts.push(VirtualProfile {
            t: b.t,
            d: b.d,
            virtuals,
            edges,
            f,
            h: p.h.clone(),
        });
    }
    Ok(VirtualDecomposition {
        t_prime,
        d_prime,
        e_prime,
        parts,
        sources,
    })
}

/// Checks a decomposition against the definition, pair by pair.
#[allow(clippy::too_many_arguments)]
pub fn check_virtual_decomposition<G: TrigraphView>(
    g_prev: &G,
    p: &VirtualProfile,
    f_prime: &[Node],
    dec: &VirtualDecomposition,
    k: usize,
    d: usize,
    bags: &BagIndex,
) -> Result<()> {
    let fail = |what: String| Err(Error::Invariant(what));
    let basics: Vec<BasicProfile> = dec.parts.iter().map(VirtualProfile::basic).collect();
    check_basic_decomposition(g_prev, &dec.t_prime, &dec.d_prime, &basics, k, d)?;
    for (j, part) in dec.parts.iter().enumerate() {
        if part.h != p.h {
            return fail(format!("part {part} has a different template"));
        }
        if !is_virtual_profile(g_prev, part, k, d, bags) {
            return fail(format!("part {part} is not a virtual profile"));
        }
        let moved = |a: usize| !is_virtual(f_prime[a]) && !sets::contains(&part.d, &f_prime[a]);
        for a in 0..k {
            let want = if moved(a) { virtual_node(p.h.class_of(a)) } else { f_prime[a] };
            if part.f[a] != want {
                return fail(format!("part {part} maps x{} wrongly", a + 1));
            }
            let holds = sets::contains(&part.d, &f_prime[a]);
            if holds != (dec.sources[a] == Some(j)) {
                return fail(format!("source of x{} is not part {j}", a + 1));
            }
        }
        let fresh: Vec<Node> = sets::difference(&part.virtuals, &p.virtuals);
        let old_scope = |x: Node| sets::contains(&p.virtuals, &x) || sets::contains(&part.t, &x);
        let vars_of = |w: Node| (0..k).filter(move |&a| moved(a) && virtual_node(p.h.class_of(a)) == w);
        let nodes: Vec<Node> = part.t.iter().chain(&part.virtuals).copied().collect();
        for (i, &x) in nodes.iter().enumerate() {
            for &y in &nodes[i + 1..] {
                if !is_virtual(x) && !is_virtual(y) {
                    continue;
                }
                let (x_new, y_new) = (sets::contains(&fresh, &x), sets::contains(&fresh, &y));
                let expected = match (x_new, y_new) {
                    (false, false) => dec.e_prime.binary_search(&pair(x, y)).is_ok(),
                    (true, true) => p.h.adjacent(x - VIRTUAL_BASE, y - VIRTUAL_BASE),
                    _ => {
                        let (old, new) = if x_new { (y, x) } else { (x, y) };
                        old_scope(old)
                            && vars_of(new).any(|a| {
                                let w = f_prime[a];
                                dec.e_prime.binary_search(&pair(old, w)).is_ok()
                                    || (!is_virtual(old) && g_prev.is_black(old, w))
                            })
                    }
                };
                if expected != part.has_edge(x, y) {
                    return fail(format!("virtual edge {}{} wrong in part {part}", show(x), show(y)));
                }
            }
        }
    }
    Ok(())
}

/// `⊕` over the parts of one decomposition; the value is the sum of the parts' values.
pub fn combine(parts: &[(&VirtualProfile, &VirtualSolution)]) -> Result<VirtualSolution> {
    let Some(k) = parts.first().map(|(p, _)| p.k()) else {
        return Err(Error::InvalidArgument("nothing to combine".into()));
    };
    let mut sols = Vec::with_capacity(parts.len());
    for (p, sol) in parts {
        match &sol.s {
            Some(s) => sols.push(s),
            None => return Err(Error::InvalidArgument(format!("part {p} has no solution"))),
        }
    }
    let s = (0..k)
        .map(|a| {
            let from = parts.iter().position(|(p, _)| sets::contains(&p.d, &p.f[a])).unwrap_or(0);
            sols[from][a]
        })
        .collect();
    Ok(VirtualSolution {
        s: Some(s),
        value: parts.iter().map(|(_, sol)| sol.value).sum(),
    })
}

/// The expanded graph `G_π` on `β(T)` plus the virtual vertices.
pub struct ExpandedGraph<'a> {
    p: &'a VirtualProfile,
    g: &'a Trigraph,
    owner: HashMap<VertexId, VertexId>,
    reals: Vec<VertexId>,
}

impl<'a> ExpandedGraph<'a> {
    pub fn new(p: &'a VirtualProfile, g: &'a Trigraph, bags: &BagIndex) -> Self {
        let mut owner = HashMap::new();
        for &u in &p.t {
            for x in bags.members(u) {
                owner.insert(x, u);
            }
        }
        let mut reals: Vec<VertexId> = owner.keys().copied().collect();
        reals.sort_unstable();
        ExpandedGraph { p, g, owner, reals }
    }

    pub fn adjacent(&self, x: Node, y: Node) -> bool {
        if x == y {
            return false;
        }
        match (is_virtual(x), is_virtual(y)) {
            (false, false) => self.g.is_black(x, y),
            (false, true) => self.owner.get(&x).is_some_and(|&u| self.p.has_edge(u, y)),
            (true, false) => self.owner.get(&y).is_some_and(|&u| self.p.has_edge(u, x)),
            (true, true) => self.p.has_edge(x, y),
        }
    }

    /// `s` realizes `f` and induces a copy of `H` under `a ↦ h_a`.
    pub fn is_solution(&self, s: &[Node]) -> bool {
        let p = self.p;
        if s.len() != p.k() {
            return false;
        }
        for (a, (&sa, &fa)) in s.iter().zip(&p.f).enumerate() {
            let placed = if is_virtual(fa) {
                sa == fa
            } else {
                !is_virtual(sa) && self.owner.get(&sa) == Some(&fa)
            };
            if !placed {
                return false;
            }
            for b in a + 1..s.len() {
                let (ca, cb) = (p.h.class_of(a), p.h.class_of(b));
                if (sa == s[b]) != (ca == cb) {
                    return false;
                }
                if ca != cb && self.adjacent(sa, s[b]) != p.h.adjacent(ca, cb) {
                    return false;
                }
            }
        }
        true
    }

    /// `Σ_α |{y ∈ β(T) : G_π ⊨ ψ_α(s, y)}|`.
    pub fn value(&self, s: &[Node], sentence: &CountingSentence) -> i64 {
        let adj = |x: Node, y: Node| self.adjacent(x, y);
        let eq = |x: Node, y: Node| x == y;
        let mut total = 0;
        for &y in &self.reals {
            let assign = |t: Term| match t {
                Term::X(a) => s[a as usize - 1],
                Term::Y => y,
            };
            total += sentence.psis.iter().filter(|psi| eval_qf(psi, &adj, &eq, &assign)).count() as i64;
        }
        total
    }
}

/// `s := f`, kept when it is a solution of the 1-profile `p`.
pub fn leaf_solution(p: &VirtualProfile, sentence: &CountingSentence, g: &Trigraph, bags: &BagIndex) -> VirtualSolution {
    let gp = ExpandedGraph::new(p, g, bags);
    if gp.is_solution(&p.f) {
        VirtualSolution {
            value: gp.value(&p.f, sentence),
            s: Some(p.f.clone()),
        }
    } else {
        VirtualSolution { s: None, value: 0 }
    }
}
