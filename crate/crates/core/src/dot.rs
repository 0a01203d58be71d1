//! Graphviz (DOT) output.
//!
//! Completion diagrams conventionally draw the original edges solid and the
//! added edges dashed; [`emit_dot`] takes the final graph plus the list of
//! added edges and renders accordingly.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;

/// Errors from [`emit_dot`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DotError {
    /// A dashed edge referenced a vertex outside the graph.
    VertexOutOfRange { vertex: usize, order: usize },
    /// A dashed edge is not actually an edge of the graph.
    EdgeNotPresent(usize, usize),
}

impl fmt::Display for DotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DotError::VertexOutOfRange { vertex, order } => {
                write!(f, "dashed edge vertex {} out of range for order {}", vertex, order)
            }
            DotError::EdgeNotPresent(u, v) => {
                write!(f, "dashed edge {{{}, {}}} is not an edge of the graph", u, v)
            }
        }
    }
}

impl core::error::Error for DotError {}

/// Renders `g` as an undirected DOT graph.  Edges listed in `dashed` are
/// drawn `style=dashed`; they must be edges of `g`.
pub fn emit_dot(g: &Graph, dashed: &[(usize, usize)]) -> Result<String, DotError> {
    let n = g.order();
    let mut dash_set: Vec<(usize, usize)> = Vec::with_capacity(dashed.len());
    for &(u, v) in dashed {
        for x in [u, v] {
            if x >= n {
                return Err(DotError::VertexOutOfRange { vertex: x, order: n });
            }
        }
        if !g.has_edge(u, v) {
            return Err(DotError::EdgeNotPresent(u, v));
        }
        dash_set.push((u.min(v), u.max(v)));
    }

    use core::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "graph G {{");
    let _ = writeln!(out, "    node [shape=circle];");
    for v in 0..n {
        let _ = writeln!(out, "    {};", v);
    }
    for (u, v) in g.edges() {
        if dash_set.contains(&(u, v)) {
            let _ = writeln!(out, "    {} -- {} [style=dashed];", u, v);
        } else {
            let _ = writeln!(out, "    {} -- {};", u, v);
        }
    }
    let _ = writeln!(out, "}}");
    Ok(out)
}

// ============================================================================
// Tests
// ============================================================================

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    #[test]
    fn solid_and_dashed_edges() {
        // P_3 u K_1 completed by one iteration: added 0-2, 1-3, 2-3.
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3)]).unwrap();
        let dot = emit_dot(&g, &[(0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(dot.contains("0 -- 1;"));
        assert!(dot.contains("0 -- 2 [style=dashed];"));
        assert!(dot.contains("1 -- 3 [style=dashed];"));
        assert!(dot.contains("2 -- 3 [style=dashed];"));
        assert_eq!(dot.matches("style=dashed").count(), 3);
    }

    #[test]
    fn isolated_vertices_still_listed() {
        let g = generate(&Family::Null(3)).unwrap();
        let dot = emit_dot(&g, &[]).unwrap();
        for v in 0..3 {
            assert!(dot.contains(&alloc::format!("    {};", v)));
        }
        assert!(!dot.contains("--"));
    }

    #[test]
    fn rejects_bad_dashed_edges() {
        let g = generate(&Family::Path(3)).unwrap();
        assert_eq!(
            emit_dot(&g, &[(0, 5)]),
            Err(DotError::VertexOutOfRange { vertex: 5, order: 3 })
        );
        assert_eq!(emit_dot(&g, &[(0, 2)]), Err(DotError::EdgeNotPresent(0, 2)));
    }
}
