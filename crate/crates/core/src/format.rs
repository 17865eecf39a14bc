//! Line-oriented text format for labeled graphs.
//!
//! ```text
//! # comments start with '#'
//! graph triangle
//! v 0 C
//! v 1 C
//! v 2 N
//! e 0 1 single
//! e 1 2
//! e 2 0
//! ```
//!
//! The `graph` header is optional. Vertex ids must be exactly `0..n`, in
//! any order. Labels are single whitespace-free tokens; a missing label is
//! the empty string.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

enum Line<'a> {
    Vertex { line: usize, id: usize, label: &'a str },
    Edge { line: usize, u: usize, v: usize, label: &'a str },
}

fn parse_id(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| Error::Parse {
        line,
        message: format!("invalid vertex id {tok:?}"),
    })
}

pub fn parse_graph(text: &str) -> Result<LabeledGraph> {
    let mut name: Option<String> = None;
    let mut lines = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "graph" => {
                if name.is_some() {
                    return Err(Error::Parse {
                        line,
                        message: "duplicate graph header".into(),
                    });
                }
                name = Some(tokens[1..].join(" "));
            }
            "v" if (2..=3).contains(&tokens.len()) => lines.push(Line::Vertex {
                line,
                id: parse_id(tokens[1], line)?,
                label: tokens.get(2).copied().unwrap_or(""),
            }),
            "e" if (3..=4).contains(&tokens.len()) => lines.push(Line::Edge {
                line,
                u: parse_id(tokens[1], line)?,
                v: parse_id(tokens[2], line)?,
                label: tokens.get(3).copied().unwrap_or(""),
            }),
            _ => {
                return Err(Error::Parse {
                    line,
                    message: format!("unrecognised line {content:?}"),
                })
            }
        }
    }

    let mut vertices: BTreeMap<usize, (usize, &str)> = BTreeMap::new();
    for l in &lines {
        if let Line::Vertex { line, id, label } = *l {
            if vertices.insert(id, (line, label)).is_some() {
                return Err(Error::DuplicateVertex { line, id });
            }
        }
    }
    let mut g = LabeledGraph::new(name.unwrap_or_default());
    for (expected, (&id, &(line, label))) in vertices.iter().enumerate() {
        if id != expected {
            return Err(Error::Parse {
                line,
                message: format!("vertex ids must be dense: expected {expected}, found {id}"),
            });
        }
        g.add_vertex(label);
    }
    for l in &lines {
        if let Line::Edge { line, u, v, label } = *l {
            g.add_edge(u, v, label).map_err(|err| match err {
                Error::DanglingEdge { id, .. } => Error::DanglingEdge { line, id },
                Error::SelfLoop { id, .. } => Error::SelfLoop { line, id },
                Error::DuplicateEdge { u, v, .. } => Error::DuplicateEdge { line, u, v },
                other => other,
            })?;
        }
    }
    Ok(g)
}

pub fn serialize_graph(g: &LabeledGraph) -> String {
    let mut out = String::new();
    if !g.name().is_empty() {
        let _ = writeln!(out, "graph {}", g.name());
    }
    for v in g.vertices() {
        match g.vertex_label(v) {
            "" => writeln!(out, "v {v}"),
            l => writeln!(out, "v {v} {l}"),
        }
        .unwrap();
    }
    for (e, u, v) in g.edges() {
        match g.edge_label(e) {
            "" => writeln!(out, "e {u} {v}"),
            l => writeln!(out, "e {u} {v} {l}"),
        }
        .unwrap();
    }
    out
}

/// Read a graph file. A file without a `graph` header is named after its
/// file stem.
pub fn read_graph(path: &Path) -> Result<LabeledGraph> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    let mut g = parse_graph(&text)?;
    if g.name().is_empty() {
        if let Some(stem) = path.file_stem() {
            g.set_name(stem.to_string_lossy());
        }
    }
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn minimal_graph() {
        let g = parse_graph("graph t\nv 0\nv 1\ne 0 1").unwrap();
        assert_eq!(g.name(), "t");
        assert_eq!((g.order(), g.size()), (2, 1));
        assert_eq!(g.vertex_label(0), "");
        assert_eq!(g.edge_label(0), "");
    }

    #[test]
    fn triangle_with_comments_and_labels() {
        let g = parse_graph("# G\ngraph triangle\nv 2 N\nv 0 C\nv 1 C # tail\ne 0 1 s\ne 1 2\ne 2 0\n").unwrap();
        assert_eq!((g.order(), g.size()), (3, 3));
        assert_eq!(g.vertex_label(2), "N");
        assert_eq!(g.edge_label(0), "s");
    }

    #[test]
    fn errors_carry_line_numbers() {
        assert_eq!(parse_graph("v 0\ne 0 0"), Err(Error::SelfLoop { line: 2, id: 0 }));
        assert_eq!(parse_graph("v 0\nv 0"), Err(Error::DuplicateVertex { line: 2, id: 0 }));
        assert_eq!(parse_graph("v 0\ne 0 1"), Err(Error::DanglingEdge { line: 2, id: 1 }));
        assert_eq!(
            parse_graph("v 0\nv 1\ne 0 1\ne 1 0"),
            Err(Error::DuplicateEdge { line: 4, u: 0, v: 1 })
        );
        assert!(matches!(parse_graph("v 0\nx 1"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("v 0\nv 2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_graph("v a"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("v 0 a b"), Err(Error::Parse { line: 1, .. })));
    }

    fn arb_graph() -> impl Strategy<Value = LabeledGraph> {
        (1usize..10)
            .prop_flat_map(|n| {
                (
                    prop::collection::vec("[A-Z]?", n),
                    prop::collection::vec((0..n, 0..n, "[a-z]?"), 0..20),
                )
            })
            .prop_map(|(labels, edges)| {
                let mut g = LabeledGraph::new("arb");
                for l in labels {
                    g.add_vertex(l);
                }
                for (u, v, l) in edges {
                    let _ = g.add_edge(u, v, l);
                }
                g
            })
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(g in arb_graph()) {
            prop_assert_eq!(parse_graph(&serialize_graph(&g)).unwrap(), g);
        }
    }
}
