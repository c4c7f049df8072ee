//! Text formats for graphs and contraction sequences.
//!
//! Graph files start with a line `n m` followed by `m` lines `u v` (1-based
//! ids). Sequence files hold `n - 1` lines `left right merged` where
//! `merged = n + line index`. Lines starting with `#` and blank lines are
//! ignored; LF and CRLF endings are both accepted.

use super::{ContractionSequence, ContractionStep, EdgeColor, Trigraph, TrigraphView, VertexId};
use crate::error::{Error, Result};

/// Non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = line.trim_end_matches('\r').trim();
        if line.is_empty() || line.starts_with('#') {
            None
        } else {
            Some((i + 1, line))
        }
    })
}

fn integers<const N: usize>(line_no: usize, line: &str) -> Result<[u64; N]> {
    let tokens: Vec<&str> = line.split_whitespace().collect();
    if tokens.len() != N {
        return Err(Error::parse(line_no, format!("expected {N} integers, found {} tokens", tokens.len())));
    }
    let mut out = [0u64; N];
    for (slot, tok) in out.iter_mut().zip(&tokens) {
        *slot = tok
            .parse()
            .map_err(|_| Error::parse(line_no, format!("`{tok}` is not a non-negative integer")))?;
    }
    Ok(out)
}

/// Parses a graph file into an all-black trigraph.
pub fn parse_graph(text: &str) -> Result<Trigraph> {
    if !text.is_ascii() {
        return Err(Error::parse(1, "graph file must be ASCII"));
    }
    let mut lines = content_lines(text);
    let (header_no, header) = lines.next().ok_or_else(|| Error::parse(1, "missing `n m` header"))?;
    let [n, m] = integers::<2>(header_no, header)?;
    if n == 0 {
        return Err(Error::parse(header_no, "a graph needs at least one vertex"));
    }
    if n > (u32::MAX / 2) as u64 {
        return Err(Error::parse(header_no, format!("vertex count {n} is too large")));
    }
    let mut g = Trigraph::edgeless(n as usize);
    let mut seen = 0u64;
    let mut last_line = header_no;
    for (line_no, line) in lines {
        last_line = line_no;
        if seen == m {
            return Err(Error::parse(line_no, format!("more than the declared {m} edges")));
        }
        let [u, v] = integers::<2>(line_no, line)?;
        for x in [u, v] {
            if x == 0 || x > n {
                return Err(Error::parse(line_no, format!("vertex {x} out of range 1..={n}")));
            }
        }
        if u == v {
            return Err(Error::parse(line_no, format!("self-loop at {u}")));
        }
        let (u, v) = (u as VertexId, v as VertexId);
        if g.color(u, v).is_some() {
            return Err(Error::parse(line_no, format!("duplicate edge {u} {v}")));
        }
        g.add_edge(u, v, EdgeColor::Black).map_err(|e| Error::parse(line_no, e.to_string()))?;
        seen += 1;
    }
    if seen != m {
        return Err(Error::parse(last_line + 1, format!("expected {m} edges, found {seen}")));
    }
    Ok(g)
}


/// Parses a sequence file for a graph on `n` vertices. Liveness of the
/// contracted vertices is not checked here; see [`super::validate_sequence`].
pub fn parse_sequence(text: &str, n: usize) -> Result<ContractionSequence> {
    if !text.is_ascii() {
        return Err(Error::parse(1, "sequence file must be ASCII"));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("sequence for an empty graph".into()));
    }
    let max_id = (2 * n - 1) as u64;
    let mut steps = Vec::with_capacity(n - 1);
    let mut last_line = 0;
    for (line_no, line) in content_lines(text) {
        last_line = line_no;
        if steps.len() == n - 1 {
            return Err(Error::parse(line_no, format!("more than the {} steps expected for n = {n}", n - 1)));
        }
        let [l, r, m] = integers::<3>(line_no, line)?;
        for x in [l, r] {
            if x == 0 || x > max_id {
                return Err(Error::parse(line_no, format!("vertex {x} out of range 1..={max_id}")));
            }
        }
        if l == r {
            return Err(Error::parse(line_no, format!("vertex {l} contracted with itself")));
        }
        let expected = (n + steps.len() + 1) as u64;
        if m != expected {
            return Err(Error::parse(line_no, format!("merged id must be {expected}, found {m}")));
        }
        steps.push(ContractionStep::new(l as VertexId, r as VertexId, m as VertexId));
    }
    if steps.len() != n - 1 {
        return Err(Error::parse(
            last_line + 1,
            format!("expected {} steps for n = {n}, found {}", n - 1, steps.len()),
        ));
    }
    Ok(ContractionSequence::new(n, steps))
}

impl Trigraph {
    /// Serializes the black edges in the graph file format.
    pub fn to_graph_text(&self) -> String {
        let edges = self.edges_of_color(EdgeColor::Black);
        let mut s = format!("{} {}\n", self.num_vertices(), edges.len());
        for (u, v) in edges {
            s.push_str(&format!("{u} {v}\n"));
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{FIGURE_ONE_GRAPH, FIGURE_ONE_SEQUENCE};

    #[test]
    fn smallest_graph() {
        let g = parse_graph("2 1\n1 2").unwrap();
        assert_eq!(g.num_vertices(), 2);
        assert_eq!(g.edges(), vec![(1, 2, EdgeColor::Black)]);
    }

    #[test]
    fn figure_one_graph_parses() {
        let g = parse_graph(FIGURE_ONE_GRAPH).unwrap();
        assert_eq!(g.num_vertices(), 6);
        assert_eq!(g.num_edges(), 8);
        assert!(!g.has_red_edges());
    }

    #[test]
    fn out_of_range_vertex() {
        let err = parse_graph("2 1\n1 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, ref message } if message.contains("out of range")));
    }

    #[test]
    fn comments_and_crlf() {
        let g = parse_graph("# header comment\r\n3 2\r\n1 2\r\n# mid\r\n2 3\r\n").unwrap();
        assert_eq!(g.num_edges(), 2);
    }

    #[test]
    fn duplicate_and_loop_rejected() {
        assert!(matches!(parse_graph("3 2\n1 2\n2 1"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 1\n2 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("3 2\n1 2"), Err(Error::Parse { .. })));
        assert!(matches!(parse_graph("3 1\n1 2\n2 3"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_graph("3 x\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn figure_one_sequence_parses() {
        let c = parse_sequence(FIGURE_ONE_SEQUENCE, 6).unwrap();
        assert_eq!(c.steps.len(), 5);
        assert_eq!(c.steps[0], ContractionStep::new(5, 6, 7));
        assert_eq!(c.steps[4], ContractionStep::new(8, 10, 11));
    }

    #[test]
    fn wrong_step_count() {
        let err = parse_sequence("5 6 7\n1 2 8\n3 4 9\n", 6).unwrap_err();
        assert!(matches!(err, Error::Parse { ref message, .. } if message.contains("expected 5 steps")));
    }

    #[test]
    fn non_integer_token() {
        assert!(matches!(parse_sequence("1 two 3\n", 2), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn reused_id_left_to_validation() {
        // 6 is contracted twice; the parser accepts it.
        let c = parse_sequence("5 6 7\n6 1 8\n3 4 9\n9 7 10\n8 10 11\n", 6).unwrap();
        assert_eq!(c.steps[1].left, 6);
    }

    #[test]
    fn graph_text_round_trip() {
        let g = parse_graph(FIGURE_ONE_GRAPH).unwrap();
        assert_eq!(parse_graph(&g.to_graph_text()).unwrap(), g);
    }
}
