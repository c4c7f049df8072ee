//! Small graphs shared by tests, the CLI and the acceptance suite.

use crate::trigraph::{parse_graph, parse_sequence, ContractionSequence, Trigraph};

/// Six vertices `A..F` numbered `1..6`.
pub const FIGURE_ONE_GRAPH: &str = "6 8\n1 2\n2 3\n3 6\n6 5\n5 4\n4 2\n1 3\n3 5\n";

/// Contracts `EF`, `AB`, `CD`, then the two merged pairs; width 2.
pub const FIGURE_ONE_SEQUENCE: &str = "5 6 7\n1 2 8\n3 4 9\n9 7 10\n8 10 11\n";

pub fn figure_one_graph() -> Trigraph {
    parse_graph(FIGURE_ONE_GRAPH).expect("fixture graph parses")
}

pub fn figure_one_sequence() -> ContractionSequence {
    parse_sequence(FIGURE_ONE_SEQUENCE, 6).expect("fixture sequence parses")
}
