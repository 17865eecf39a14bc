//! Maximum common subgraphs.
//!
//! Three engines share the [`McsResult`] type:
//!
//! * [`mcs_tree`]: common subtrees of two trees by dynamic programming over
//!   rooted parts, with a weighted matching at every compound-root pair;
//! * [`mcs_bbp`]: block-and-bridge preserving common subgraphs of two
//!   outerplanar graphs, by the same scheme over bridges and blocks, with
//!   block pairs solved by bounded enumeration;
//! * [`mcs_oracle`]: exhaustive search for small graphs, plain or BBP.
//!
//! Common subgraphs are connected and not necessarily induced.

mod bbp;
mod check;
mod oracle;
mod tree;

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

pub use bbp::{mcs_bbp, mcs_bbp_with};
pub use check::{check_bbp, BbpViolation, HostSide, ViolationKind};
pub use oracle::{mcs_oracle, ORACLE_LIMIT};
pub use tree::{mcs_tree, mcs_tree_rooted, mcs_tree_with, tree_center};

use crate::graph::{EdgeId, LabeledGraph, VertexId};
use crate::instrument::SolverKind;
use crate::weights::{Rational, WeightScheme};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum McsMode {
    /// Connected common subgraphs.
    Plain,
    /// Connected common subgraphs with block and bridge preserving embeddings.
    Bbp,
    /// Common subgraphs that need not be connected.
    General,
}

impl fmt::Display for McsMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            McsMode::Plain => "plain",
            McsMode::Bbp => "bbp",
            McsMode::General => "general",
        })
    }
}

/// Maximum common subgraph in `mode` with the default engine: the tree
/// dynamic program for two trees and the exhaustive search otherwise in
/// plain mode, the block/bridge dynamic program in BBP mode. General mode
/// always uses the exhaustive search.
pub fn maximum_common_subgraph(
    g: &LabeledGraph,
    h: &LabeledGraph,
    w: &WeightScheme,
    mode: McsMode,
    solver: SolverKind,
) -> crate::Result<McsResult> {
    match mode {
        McsMode::Plain if g.is_tree() && h.is_tree() => mcs_tree(g, h, w, solver),
        McsMode::Plain => mcs_oracle(g, h, w, McsMode::Plain),
        McsMode::Bbp => mcs_bbp(g, h, w, solver),
        McsMode::General => mcs_oracle(g, h, w, McsMode::General),
    }
}

/// A common subgraph `I` given by its embeddings into both hosts.
///
/// Vertex `i` of `I` maps to `vertex_map[i] = (g, h)`; edge `j` of `I` maps
/// to the host edges `edge_map[j] = (e_g, e_h)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct McsResult {
    pub weight: Rational,
    pub vertex_map: Vec<(VertexId, VertexId)>,
    pub edge_map: Vec<(EdgeId, EdgeId)>,
    pub mode: McsMode,
}

impl McsResult {
    pub(crate) fn from_parts(
        weight: Rational,
        mut vertex_map: Vec<(VertexId, VertexId)>,
        mut edge_map: Vec<(EdgeId, EdgeId)>,
        mode: McsMode,
    ) -> Self {
        vertex_map.sort_unstable();
        edge_map.sort_unstable();
        McsResult {
            weight,
            vertex_map,
            edge_map,
            mode,
        }
    }

    pub(crate) fn empty(mode: McsMode) -> Self {
        McsResult::from_parts(Rational::zero(), Vec::new(), Vec::new(), mode)
    }

    /// The common graph `I`, labeled as in `g`.
    pub fn common_graph(&self, g: &LabeledGraph) -> LabeledGraph {
        let mut out = LabeledGraph::new("common");
        for &(gv, _) in &self.vertex_map {
            out.add_vertex(g.vertex_label(gv));
        }
        for &(eg, _) in &self.edge_map {
            let (a, b) = g.endpoints(eg);
            out.add_edge(self.local(a), self.local(b), g.edge_label(eg))
                .expect("edge map is consistent");
        }
        out
    }

    /// Vertex of `I` mapped to host-`G` vertex `gv`.
    fn local(&self, gv: VertexId) -> usize {
        self.vertex_map
            .iter()
            .position(|&(a, _)| a == gv)
            .expect("endpoint is mapped")
    }

    /// Check that the maps describe a label-preserving common subgraph of `g`
    /// and `h`, connected unless the mode is general, whose weight under `w`
    /// is `self.weight`.
    pub fn validate(&self, g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme) -> Result<(), String> {
        let gs: BTreeSet<_> = self.vertex_map.iter().map(|p| p.0).collect();
        let hs: BTreeSet<_> = self.vertex_map.iter().map(|p| p.1).collect();
        if gs.len() != self.vertex_map.len() || hs.len() != self.vertex_map.len() {
            return Err("vertex map is not injective".into());
        }
        let mut total = Rational::zero();
        for &(a, b) in &self.vertex_map {
            if a >= g.order() || b >= h.order() {
                return Err(format!("vertex pair ({a},{b}) out of range"));
            }
            if g.vertex_label(a) != h.vertex_label(b) {
                return Err(format!("labels of {a} and {b} differ"));
            }
            total += w.vertex_weight(g.vertex_label(a)).map_err(|e| e.to_string())?;
        }
        let image = |gv: VertexId| self.vertex_map.iter().find(|p| p.0 == gv).map(|p| p.1);
        let mut seen_g = BTreeSet::new();
        let mut seen_h = BTreeSet::new();
        for &(eg, eh) in &self.edge_map {
            if eg >= g.size() || eh >= h.size() || !seen_g.insert(eg) || !seen_h.insert(eh) {
                return Err(format!("edge pair ({eg},{eh}) invalid or repeated"));
            }
            let (a, b) = g.endpoints(eg);
            let (Some(x), Some(y)) = (image(a), image(b)) else {
                return Err(format!("edge {eg} has an unmapped endpoint"));
            };
            if h.edge_between(x, y) != Some(eh) {
                return Err(format!("edge {eg} does not map to edge {eh}"));
            }
            if g.edge_label(eg) != h.edge_label(eh) {
                return Err(format!("labels of edges {eg} and {eh} differ"));
            }
            total += w.edge_weight(g.edge_label(eg)).map_err(|e| e.to_string())?;
        }
        if self.mode != McsMode::General && !self.common_graph(g).is_connected() {
            return Err("common graph is disconnected".into());
        }
        if total != self.weight {
            return Err(format!("weight {} but elements sum to {}", self.weight, total));
        }
        Ok(())
    }
}

/// Vertex and edge weights of both hosts, plus label comparison helpers.
pub(crate) struct Hosts<'a> {
    pub g: &'a LabeledGraph,
    pub h: &'a LabeledGraph,
    /// Element weights of `g`; matched elements carry equal labels, so these
    /// are also the weights of the common subgraph.
    pub gw: crate::weights::ElementWeights,
}

impl<'a> Hosts<'a> {
    pub fn new(g: &'a LabeledGraph, h: &'a LabeledGraph, w: &WeightScheme) -> crate::Result<Self> {
        w.element_weights(h)?;
        Ok(Hosts {
            g,
            h,
            gw: w.element_weights(g)?,
        })
    }

    pub fn vertices_match(&self, a: VertexId, b: VertexId) -> bool {
        self.g.vertex_label(a) == self.h.vertex_label(b)
    }

    pub fn edges_match(&self, ea: EdgeId, eb: EdgeId) -> bool {
        self.g.edge_label(ea) == self.h.edge_label(eb)
    }
}
