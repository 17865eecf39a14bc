//! Block/bridge decomposition.
//!
//! A block is a maximal biconnected subgraph in the cycle sense: any two of
//! its vertices lie on a common cycle. A single edge is therefore never a
//! block; edges outside every block are bridges.

use crate::graph::{EdgeId, LabeledGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeClass {
    Block(usize),
    Bridge,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    /// Sorted edge ids.
    pub edges: Vec<EdgeId>,
    /// Sorted vertex ids.
    pub vertices: Vec<VertexId>,
}

/// One of the pieces a vertex is attached to: a bridge or a block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Incidence {
    Bridge { edge: EdgeId, other: VertexId },
    Block(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BcDecomposition {
    pub blocks: Vec<Block>,
    pub bridges: Vec<EdgeId>,
    pub articulation_vertices: Vec<VertexId>,
    pub block_of: Vec<EdgeClass>,
    incidences: Vec<Vec<Incidence>>,
}

impl BcDecomposition {
    pub fn is_bridge(&self, e: EdgeId) -> bool {
        self.block_of[e] == EdgeClass::Bridge
    }

    /// Bridges and blocks containing `v`: bridges first in adjacency order,
    /// then blocks by index.
    pub fn incidences(&self, v: VertexId) -> &[Incidence] {
        &self.incidences[v]
    }

    pub fn largest_block(&self) -> usize {
        self.blocks.iter().map(|b| b.vertices.len()).max().unwrap_or(0)
    }
}

/// Decompose `g` into blocks and bridges. Works per connected component.
pub fn decompose_bc(g: &LabeledGraph) -> BcDecomposition {
    const UNSEEN: usize = usize::MAX;
    let n = g.order();
    let mut disc = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut timer = 0;
    let mut edge_stack: Vec<EdgeId> = Vec::new();
    let mut components: Vec<Vec<EdgeId>> = Vec::new();

    for s in g.vertices() {
        if disc[s] != UNSEEN {
            continue;
        }
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        // (vertex, edge to parent, next neighbor index)
        let mut frames: Vec<(VertexId, Option<EdgeId>, usize)> = vec![(s, None, 0)];
        while let Some(frame) = frames.last_mut() {
            let (v, parent_edge, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let (w, e) = g.neighbors(v)[idx];
                if Some(e) == parent_edge {
                    continue;
                }
                if disc[w] == UNSEEN {
                    edge_stack.push(e);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    frames.push((w, Some(e), 0));
                } else if disc[w] < disc[v] {
                    edge_stack.push(e);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                frames.pop();
                if let (Some(&(p, _, _)), Some(pe)) = (frames.last(), parent_edge) {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        let mut comp = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            comp.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        components.push(comp);
                    }
                }
            }
        }
    }

    let mut block_edges: Vec<Vec<EdgeId>> = Vec::new();
    let mut bridges = Vec::new();
    for mut comp in components {
        if comp.len() == 1 {
            bridges.push(comp[0]);
        } else {
            comp.sort_unstable();
            block_edges.push(comp);
        }
    }
    block_edges.sort();
    bridges.sort_unstable();

    let mut block_of = vec![EdgeClass::Bridge; g.size()];
    let mut blocks = Vec::with_capacity(block_edges.len());
    for (i, edges) in block_edges.into_iter().enumerate() {
        let mut vertices = Vec::new();
        for &e in &edges {
            block_of[e] = EdgeClass::Block(i);
            let (u, v) = g.endpoints(e);
            vertices.push(u);
            vertices.push(v);
        }
        vertices.sort_unstable();
        vertices.dedup();
        blocks.push(Block { edges, vertices });
    }

    let mut incidences: Vec<Vec<Incidence>> = vec![Vec::new(); n];
    for v in g.vertices() {
        for &(w, e) in g.neighbors(v) {
            if block_of[e] == EdgeClass::Bridge {
                incidences[v].push(Incidence::Bridge { edge: e, other: w });
            }
        }
    }
    for (i, b) in blocks.iter().enumerate() {
        for &v in &b.vertices {
            incidences[v].push(Incidence::Block(i));
        }
    }
    let articulation_vertices = g.vertices().filter(|&v| incidences[v].len() >= 2).collect();

    BcDecomposition {
        blocks,
        bridges,
        articulation_vertices,
        block_of,
        incidences,
    }
}
