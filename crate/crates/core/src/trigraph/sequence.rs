use std::collections::HashSet;
use std::fmt;

use super::{play_sequence, Trigraph, VertexId};

/// One contraction: `left` and `right` are replaced by `merged`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ContractionStep {
    pub left: VertexId,
    pub right: VertexId,
    pub merged: VertexId,
}

impl ContractionStep {
    pub fn new(left: VertexId, right: VertexId, merged: VertexId) -> Self {
        ContractionStep { left, right, merged }
    }
}

/// Contraction steps for a graph on `n` vertices. A complete sequence has
/// `n - 1` steps and step `i` (1-based) creates vertex `n + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionSequence {
    pub n: usize,
    pub steps: Vec<ContractionStep>,
}

impl ContractionSequence {
    pub fn new(n: usize, steps: Vec<ContractionStep>) -> Self {
        ContractionSequence { n, steps }
    }

    /// Builds a sequence from `(left, right)` pairs, assigning canonical merged ids.
    pub fn from_pairs(n: usize, pairs: &[(VertexId, VertexId)]) -> Self {
        let steps = pairs
            .iter()
            .enumerate()
            .map(|(i, &(l, r))| ContractionStep::new(l, r, (n + i + 1) as VertexId))
            .collect();
        ContractionSequence { n, steps }
    }

    /// The vertex created by the 1-based step `i`.
    pub fn merged_id(&self, i: usize) -> VertexId {
        (self.n + i) as VertexId
    }

    /// Serializes to the line format accepted by [`super::parse_sequence`].
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for st in &self.steps {
            s.push_str(&format!("{} {} {}\n", st.left, st.right, st.merged));
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    VertexCountMismatch { graph: usize, sequence: usize },
    UnknownVertex(VertexId),
    DeadVertex(VertexId),
    SameEndpoints(VertexId),
    DuplicateMergedId(VertexId),
    NonCanonicalMergedId { expected: VertexId, found: VertexId },
    LeftoverVertices(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// 1-based step index, `None` for whole-sequence problems.
    pub step: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(step) = self.step {
            write!(f, "step {step}: ")?;
        }
        match &self.kind {
            ViolationKind::VertexCountMismatch { graph, sequence } => {
                write!(f, "graph has {graph} vertices but the sequence is for {sequence}")
            }
            ViolationKind::UnknownVertex(v) => write!(f, "vertex {v} does not exist yet"),
            ViolationKind::DeadVertex(v) => write!(f, "vertex {v} was already contracted"),
            ViolationKind::SameEndpoints(v) => write!(f, "vertex {v} contracted with itself"),
            ViolationKind::DuplicateMergedId(v) => write!(f, "merged id {v} is already in use"),
            ViolationKind::NonCanonicalMergedId { expected, found } => {
                write!(f, "merged id must be {expected}, found {found}")
            }
            ViolationKind::LeftoverVertices(k) => write!(f, "{k} vertices remain after the last step"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ValidationReport {
    Valid { width: usize },
    Invalid(Violation),
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        matches!(self, ValidationReport::Valid { .. })
    }
}

/// Checks that `c` contracts `g` down to a single vertex using only live
/// vertices and canonical merged ids, and reports the width when it does.
/// The first violation found is reported.
pub fn validate_sequence(g: &Trigraph, c: &ContractionSequence) -> ValidationReport {
    let invalid = |step, kind| ValidationReport::Invalid(Violation { step, kind });
    let n = g.num_vertices();
    if n != c.n || g.vertices().enumerate().any(|(i, v)| v as usize != i + 1) {
        return invalid(None, ViolationKind::VertexCountMismatch { graph: n, sequence: c.n });
    }
    let mut live: HashSet<VertexId> = g.vertices().collect();
    let mut ever: HashSet<VertexId> = live.clone();
    for (idx, st) in c.steps.iter().enumerate() {
        let step = Some(idx + 1);
        if st.left == st.right {
            return invalid(step, ViolationKind::SameEndpoints(st.left));
        }
        for x in [st.left, st.right] {
            if !live.contains(&x) {
                let kind = if ever.contains(&x) {
                    ViolationKind::DeadVertex(x)
                } else {
                    ViolationKind::UnknownVertex(x)
                };
                return invalid(step, kind);
            }
        }
        if ever.contains(&st.merged) {
            return invalid(step, ViolationKind::DuplicateMergedId(st.merged));
        }
        let expected = c.merged_id(idx + 1);
        if st.merged != expected {
            return invalid(step, ViolationKind::NonCanonicalMergedId { expected, found: st.merged });
        }
        live.remove(&st.left);
        live.remove(&st.right);
        live.insert(st.merged);
        ever.insert(st.merged);
    }
    if live.len() != 1 {
        return invalid(None, ViolationKind::LeftoverVertices(live.len()));
    }
    let replay = play_sequence(g, c).expect("a checked sequence replays");
    ValidationReport::Valid { width: replay.width() }
}
