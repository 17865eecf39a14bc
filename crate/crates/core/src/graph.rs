//! Undirected labeled graphs with dense vertex ids.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// A simple undirected graph whose vertices are `0..order()` and whose
/// vertices and edges carry opaque string labels.
///
/// Self-loops and parallel edges are rejected on insertion.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct LabeledGraph {
    name: String,
    vertex_labels: Vec<String>,
    edges: Vec<(VertexId, VertexId)>,
    edge_labels: Vec<String>,
    adjacency: Vec<Vec<(VertexId, EdgeId)>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl LabeledGraph {
    pub fn new(name: impl Into<String>) -> Self {
        LabeledGraph {
            name: name.into(),
            ..Default::default()
        }
    }

    /// Unlabeled graph on `order` vertices with the given edges.
    pub fn from_edges(name: impl Into<String>, order: usize, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let mut g = LabeledGraph::new(name);
        for _ in 0..order {
            g.add_vertex("");
        }
        for &(u, v) in edges {
            g.add_edge(u, v, "")?;
        }
        Ok(g)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn add_vertex(&mut self, label: impl Into<String>) -> VertexId {
        self.vertex_labels.push(label.into());
        self.adjacency.push(Vec::new());
        self.vertex_labels.len() - 1
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId, label: impl Into<String>) -> Result<EdgeId> {
        for id in [u, v] {
            if id >= self.order() {
                return Err(Error::DanglingEdge { line: 0, id });
            }
        }
        if u == v {
            return Err(Error::SelfLoop { line: 0, id: u });
        }
        let key = (u.min(v), u.max(v));
        if self.edge_index.contains_key(&key) {
            return Err(Error::DuplicateEdge {
                line: 0,
                u: key.0,
                v: key.1,
            });
        }
        let e = self.edges.len();
        self.edges.push(key);
        self.edge_labels.push(label.into());
        self.adjacency[u].push((v, e));
        self.adjacency[v].push((u, e));
        self.edge_index.insert(key, e);
        Ok(e)
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertex_labels.len()
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.order()
    }

    pub fn vertex_label(&self, v: VertexId) -> &str {
        &self.vertex_labels[v]
    }

    /// Endpoints of edge `e`, smaller id first.
    pub fn endpoints(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edge_label(&self, e: EdgeId) -> &str {
        &self.edge_labels[e]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.edges.iter().enumerate().map(|(e, &(u, v))| (e, u, v))
    }

    /// Neighbors of `v` paired with the connecting edge, in insertion order.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adjacency[v].len()
    }

    pub fn edge_between(&self, u: VertexId, v: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    /// Connected components as sorted vertex lists, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = vec![false; self.order()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &(w, _) in self.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The empty graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.order() == 0 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.order() > 0 && self.size() + 1 == self.order() && self.is_connected()
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::InvalidVertex {
                graph: self.name.clone(),
                id: v,
            })
        }
    }
}

impl fmt::Debug for LabeledGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LabeledGraph")
            .field("name", &self.name)
            .field("vertex_labels", &self.vertex_labels)
            .field("edges", &self.edges)
            .field("edge_labels", &self.edge_labels)
            .finish()
    }
}

/// A graph with a distinguished root vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedGraph {
    graph: LabeledGraph,
    root: VertexId,
}

impl RootedGraph {
    pub fn new(graph: LabeledGraph, root: VertexId) -> Result<Self> {
        graph.check_vertex(root)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected {
                graph: graph.name().to_string(),
            });
        }
        Ok(RootedGraph { graph, root })
    }

    pub fn graph(&self) -> &LabeledGraph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use super::*;

    /// Cycle on `n >= 3` vertices `0-1-...-(n-1)-0`.
    pub fn cycle(n: usize) -> LabeledGraph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        LabeledGraph::from_edges(format!("C{n}"), n, &edges).expect("valid cycle")
    }

    pub fn complete(n: usize) -> LabeledGraph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        LabeledGraph::from_edges(format!("K{n}"), n, &edges).expect("valid clique")
    }

    pub fn triangle() -> LabeledGraph {
        let mut g = cycle(3);
        g.set_name("triangle");
        g
    }

    /// Two triangles sharing the edge `{0,1}`.
    pub fn k4_minus_edge() -> LabeledGraph {
        LabeledGraph::from_edges("k4_minus_edge", 4, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 1)])
            .expect("valid graph")
    }

    /// Graph `G` of the two-graph block-and-bridge example: a 3-cycle and a
    /// 4-cycle with chord merged into one block, plus one pendant edge.
    ///
    /// Vertex order: u1, u2, u4, u5, d1, d2, d3, v7.
    pub fn figure_g() -> LabeledGraph {
        LabeledGraph::from_edges(
            "fig1_g",
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (0, 3),
                (4, 5),
                (4, 6),
                (5, 6),
                (4, 0),
                (6, 2),
                (4, 7),
            ],
        )
        .expect("valid graph")
    }

    /// Graph `H` of the same example: `G` without the edges `{u4,u5}` and
    /// `{d1,d2}`, which splits it into a triangle block, a 4-cycle block and
    /// two bridges.
    pub fn figure_h() -> LabeledGraph {
        LabeledGraph::from_edges(
            "fig1_h",
            8,
            &[
                (0, 1),
                (0, 2),
                (1, 3),
                (0, 3),
                (4, 6),
                (5, 6),
                (4, 0),
                (6, 2),
                (4, 7),
            ],
        )
        .expect("valid graph")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = LabeledGraph::new("g");
        g.add_vertex("a");
        g.add_vertex("b");
        assert!(matches!(g.add_edge(0, 0, ""), Err(Error::SelfLoop { .. })));
        g.add_edge(0, 1, "x").unwrap();
        assert!(matches!(g.add_edge(1, 0, ""), Err(Error::DuplicateEdge { .. })));
        assert!(matches!(g.add_edge(0, 2, ""), Err(Error::DanglingEdge { id: 2, .. })));
        assert_eq!(g.edge_between(1, 0), Some(0));
        assert_eq!(g.edge_label(0), "x");
    }

    #[test]
    fn tree_and_connectivity() {
        let path = LabeledGraph::from_edges("p", 3, &[(0, 1), (1, 2)]).unwrap();
        assert!(path.is_tree());
        assert!(!named::triangle().is_tree());
        let two = LabeledGraph::from_edges("two", 2, &[]).unwrap();
        assert!(!two.is_connected());
        assert_eq!(two.components(), vec![vec![0], vec![1]]);
        assert!(RootedGraph::new(two, 0).is_err());
    }

    #[test]
    fn figure_graphs_have_expected_sizes() {
        assert_eq!((named::figure_g().order(), named::figure_g().size()), (8, 11));
        assert_eq!((named::figure_h().order(), named::figure_h().size()), (8, 9));
    }
}
