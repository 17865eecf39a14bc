use std::collections::HashMap;
use std::fmt;

use crate::bc::{decompose_bc, EdgeClass};
use crate::graph::{EdgeId, LabeledGraph};

use super::McsResult;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HostSide {
    G,
    H,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// A bridge of the common graph maps to an edge inside a host block.
    BridgeToBlock,
    /// Edges from two different blocks of the common graph map into one
    /// host block.
    BlocksMerged,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BbpViolation {
    pub kind: ViolationKind,
    pub host: HostSide,
    /// Offending host edges.
    pub edges: Vec<EdgeId>,
}

impl fmt::Display for BbpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in host {:?} at edges {:?}", self.kind, self.host, self.edges)
    }
}

/// Check that both embeddings of the common graph are block and bridge
/// preserving: bridges map to bridges, and edges of distinct blocks map to
/// distinct host blocks. Host `G` is checked first.
pub fn check_bbp(result: &McsResult, g: &LabeledGraph, h: &LabeledGraph) -> Result<(), BbpViolation> {
    let common = result.common_graph(g);
    let inner = decompose_bc(&common);
    for (side, host) in [(HostSide::G, g), (HostSide::H, h)] {
        let outer = decompose_bc(host);
        let image = |j: EdgeId| match side {
            HostSide::G => result.edge_map[j].0,
            HostSide::H => result.edge_map[j].1,
        };
        // common-graph edge ids follow edge_map order
        let mut host_block_of: HashMap<usize, (usize, EdgeId)> = HashMap::new();
        for j in 0..common.size() {
            let e = image(j);
            match (inner.block_of[j], outer.block_of[e]) {
                (EdgeClass::Bridge, EdgeClass::Block(_)) => {
                    return Err(BbpViolation {
                        kind: ViolationKind::BridgeToBlock,
                        host: side,
                        edges: vec![e],
                    })
                }
                (EdgeClass::Block(ib), EdgeClass::Block(hb)) => match host_block_of.get(&hb) {
                    Some(&(other, e2)) if other != ib => {
                        let mut edges = vec![e2, e];
                        edges.sort_unstable();
                        return Err(BbpViolation {
                            kind: ViolationKind::BlocksMerged,
                            host: side,
                            edges,
                        });
                    }
                    Some(_) => {}
                    None => {
                        host_block_of.insert(hb, (ib, e));
                    }
                },
                // a cycle of the common graph maps onto a host cycle, so a
                // block edge never lands on a host bridge
                (EdgeClass::Block(_), EdgeClass::Bridge) | (EdgeClass::Bridge, EdgeClass::Bridge) => {}
            }
        }
    }
    Ok(())
}
