//! Brute-force references evaluated straight from the problem definitions.
//!
//! Only black edges count: red edges never appear in an input graph.

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::logic::formula::CountingSentence;
use crate::logic::model_check::count_in_graph;
use crate::trigraph::{Trigraph, TrigraphView, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_k: usize,
    pub max_tuples: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_n: 14,
            max_k: 4,
            max_tuples: 50_000_000,
        }
    }
}

/// The best value found and the first tuple (in lexicographic order) reaching it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Best {
    pub value: u64,
    pub witness: Vec<VertexId>,
}

/// `|N[S]|`.
pub fn closed_neighborhood_size(g: &Trigraph, s: &[VertexId]) -> u64 {
    g.vertices()
        .filter(|&x| s.iter().any(|&y| x == y || g.is_black(x, y)))
        .count() as u64
}

/// Edges with at least one end in `s`.
pub fn covered_edges(g: &Trigraph, s: &[VertexId]) -> u64 {
    g.edges_of_color(crate::trigraph::EdgeColor::Black)
        .into_iter()
        .filter(|(x, y)| s.contains(x) || s.contains(y))
        .count() as u64
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

impl OracleBudget {
    fn admit(&self, n: usize, k: usize, tuples: u64) -> Result<()> {
        if n > self.max_n {
            return Err(Error::Budget(format!("n = {n} exceeds {}", self.max_n)));
        }
        if k > self.max_k {
            return Err(Error::Budget(format!("k = {k} exceeds {}", self.max_k)));
        }
        if tuples > self.max_tuples {
            return Err(Error::Budget(format!("{tuples} tuples exceed {}", self.max_tuples)));
        }
        Ok(())
    }
}

fn best_subset(g: &Trigraph, k: usize, budget: &OracleBudget, score: impl Fn(&[VertexId]) -> u64) -> Result<Option<Best>> {
    let n = g.num_vertices();
    if k > n {
        return Ok(None);
    }
    budget.admit(n, k, binomial(n as u64, k as u64))?;
    let mut best: Option<Best> = None;
    for s in g.vertices().combinations(k) {
        let value = score(&s);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(Best { value, witness: s });
        }
    }
    Ok(best)
}

/// Max `|N[S]|` over `k`-subsets; `None` when `k > n`.
pub fn brute_pds(g: &Trigraph, k: usize) -> Result<Option<Best>> {
    brute_pds_within(g, k, &OracleBudget::default())
}

pub fn brute_pds_within(g: &Trigraph, k: usize, budget: &OracleBudget) -> Result<Option<Best>> {
    best_subset(g, k, budget, |s| closed_neighborhood_size(g, s))
}

/// Max number of edges covered by a `k`-subset; `None` when `k > n`.
pub fn brute_pvc(g: &Trigraph, k: usize) -> Result<Option<Best>> {
    brute_pvc_within(g, k, &OracleBudget::default())
}

pub fn brute_pvc_within(g: &Trigraph, k: usize, budget: &OracleBudget) -> Result<Option<Best>> {
    best_subset(g, k, budget, |s| covered_edges(g, s))
}

/// Max `Σ_α #y ψ_α` over `k`-tuples, pairwise distinct when `injective`.
/// `None` when no tuple exists.
pub fn brute_count(g: &Trigraph, sentence: &CountingSentence, injective: bool) -> Result<Option<Best>> {
    brute_count_within(g, sentence, injective, &OracleBudget::default())
}

pub fn brute_count_within(g: &Trigraph, sentence: &CountingSentence, injective: bool, budget: &OracleBudget) -> Result<Option<Best>> {
    let n = g.num_vertices();
    let k = sentence.k;
    let tuples = if injective {
        (0..k as u64).fold(1u64, |acc, i| acc.saturating_mul((n as u64).saturating_sub(i)))
    } else {
        (n as u64).saturating_pow(k as u32)
    };
    budget.admit(n, k, tuples.saturating_mul(n as u64))?;
    let vertices: Vec<VertexId> = g.vertices().collect();
    let mut best: Option<Best> = None;
    for s in itertools::repeat_n(vertices.iter().copied(), k).multi_cartesian_product() {
        if injective && s.iter().duplicates().next().is_some() {
            continue;
        }
        let value = count_in_graph(g, sentence, &s);
        if best.as_ref().is_none_or(|b| value > b.value) {
            best = Some(Best { value, witness: s });
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::figure_one_graph;
    use crate::logic::formula::{encode_pds, encode_pvc, parse_sentence};

    fn star() -> Trigraph {
        Trigraph::from_edges(4, &[(1, 2), (1, 3), (1, 4)]).unwrap()
    }

    fn triangle() -> Trigraph {
        Trigraph::from_edges(3, &[(1, 2), (2, 3), (1, 3)]).unwrap()
    }

    #[test]
    fn pds_examples() {
        assert_eq!(brute_pds(&star(), 1).unwrap().unwrap().value, 4);
        let fig = brute_pds(&figure_one_graph(), 1).unwrap().unwrap();
        assert_eq!(fig, Best { value: 5, witness: vec![3] });
        assert_eq!(brute_pds(&star(), 4).unwrap().unwrap().value, 4);
        assert_eq!(brute_pds(&star(), 5).unwrap(), None);
    }

    #[test]
    fn pvc_examples() {
        assert_eq!(brute_pvc(&triangle(), 1).unwrap().unwrap().value, 2);
        assert_eq!(brute_pvc(&figure_one_graph(), 2).unwrap().unwrap().value, 6);
        assert_eq!(brute_pvc(&Trigraph::edgeless(5), 3).unwrap().unwrap().value, 0);
    }

    #[test]
    fn count_examples() {
        let g = figure_one_graph();
        assert_eq!(brute_count(&g, &encode_pds(1).unwrap(), true).unwrap().unwrap().value, 5);
        let never = parse_sentence("k 2\nt 0\npsi !(y=y)").unwrap();
        assert_eq!(brute_count(&g, &never, false).unwrap().unwrap().value, 0);
        let s = parse_sentence("k 1\nt 0\npsi E(x1,y) & !E(y,x1)").unwrap();
        assert_eq!(brute_count(&g, &s, true).unwrap(), brute_count(&g, &s, false).unwrap());
        let pvc3 = brute_count(&triangle(), &encode_pvc(3).unwrap(), true).unwrap().unwrap();
        assert_eq!(pvc3.value, 3);
    }

    #[test]
    fn budgets_are_hard_errors() {
        let big = Trigraph::edgeless(15);
        assert!(matches!(brute_pds(&big, 1), Err(Error::Budget(_))));
        assert!(matches!(brute_pvc(&star(), 5), Ok(None)));
        assert!(matches!(brute_count(&star(), &encode_pds(4).unwrap().clone(), true), Ok(Some(_))));
        let tight = OracleBudget { max_tuples: 10, ..Default::default() };
        assert!(matches!(brute_pds_within(&figure_one_graph(), 3, &tight), Err(Error::Budget(_))));
    }
}
