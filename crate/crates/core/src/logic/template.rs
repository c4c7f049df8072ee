//! Template graphs: a labelling of `x1..xk` by classes plus a graph on the classes.

use std::fmt;

/// `label[a]` is the class of `x_{a+1}`; classes are `1..=c` in order of first
/// appearance. `edges` holds class pairs `(p, q)` with `p < q`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TemplateGraph {
    pub label: Vec<u32>,
    pub edges: Vec<(u32, u32)>,
}

impl TemplateGraph {
    pub fn k(&self) -> usize {
        self.label.len()
    }

    pub fn classes(&self) -> u32 {
        self.label.iter().copied().max().unwrap_or(0)
    }

    /// Class of variable index `a` (0-based).
    pub fn class_of(&self, a: usize) -> u32 {
        self.label[a]
    }

    pub fn adjacent(&self, p: u32, q: u32) -> bool {
        let pair = if p < q { (p, q) } else { (q, p) };
        self.edges.binary_search(&pair).is_ok()
    }

    pub fn is_all_distinct(&self) -> bool {
        self.classes() as usize == self.k()
    }

    pub(crate) fn encode(&self, out: &mut Vec<u32>) {
        out.extend_from_slice(&self.label);
        out.push(self.edges.len() as u32);
        for &(p, q) in &self.edges {
            out.push(p);
            out.push(q);
        }
    }
}

impl fmt::Display for TemplateGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H(label={:?}, edges={:?})", self.label, self.edges)
    }
}

/// All set partitions of `[k]` as restricted-growth strings with classes from 1.
pub fn set_partitions(k: usize) -> Vec<Vec<u32>> {
    fn grow(cur: &mut Vec<u32>, k: usize, max: u32, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for c in 1..=max + 1 {
            cur.push(c);
            grow(cur, k, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), k, 0, &mut out);
    out
}

/// Every graph on the classes of `label`.
pub fn templates_for(label: &[u32]) -> Vec<TemplateGraph> {
    let c = label.iter().copied().max().unwrap_or(0);
    let pairs: Vec<(u32, u32)> = (1..=c).flat_map(|p| (p + 1..=c).map(move |q| (p, q))).collect();
    (0..1u64 << pairs.len())
        .map(|mask| TemplateGraph {
            label: label.to_vec(),
            edges: pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e)
                .collect(),
        })
        .collect()
}

/// Templates over `k` labels: only the all-distinct partition unless
/// `with_collapsed` is set.
pub fn enumerate_templates(k: usize, with_collapsed: bool) -> Vec<TemplateGraph> {
    if with_collapsed {
        set_partitions(k).iter().flat_map(|label| templates_for(label)).collect()
    } else {
        let label: Vec<u32> = (1..=k as u32).collect();
        templates_for(&label)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn template_counts() {
        assert_eq!(enumerate_templates(1, false).len(), 1);
        assert_eq!(enumerate_templates(1, true).len(), 1);
        assert_eq!(enumerate_templates(2, false).len(), 2);
        assert_eq!(enumerate_templates(2, true).len(), 3);
        assert_eq!(enumerate_templates(3, false).len(), 8);
        // 1 + 3·2 + 8 over the five partitions of [3].
        assert_eq!(enumerate_templates(3, true).len(), 15);
    }

    #[test]
    fn bell_numbers() {
        let counts: Vec<usize> = (1..=5).map(|k| set_partitions(k).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 15, 52]);
        assert_eq!(set_partitions(2), vec![vec![1, 1], vec![1, 2]]);
    }
}
