//! Maximum common subgraphs under block-and-bridge preserving (BBP)
//! subgraph isomorphism, for trees and small outerplanar graphs.

pub mod bc;
pub mod cli;
pub mod bench;
pub mod error;
pub mod format;
pub mod graph;
pub mod instrument;
pub mod matching;
pub mod mcs;
pub mod metric;
pub mod outerplanar;
pub mod parts;
pub mod weights;

pub use bc::{decompose_bc, BcDecomposition, Block, EdgeClass, Incidence};
pub use error::{Error, Result};
pub use format::{parse_graph, read_graph, serialize_graph};
pub use graph::{EdgeId, LabeledGraph, RootedGraph, VertexId};
pub use instrument::{Collector, InstrumentationLog, SolverKind};
pub use mcs::{check_bbp, maximum_common_subgraph, mcs_bbp, mcs_oracle, mcs_tree, McsMode, McsResult};
pub use metric::{audit_metric, distance, DistanceReport, MetricAudit};
pub use outerplanar::{is_outerplanar, Outerplanarity};
pub use weights::{graph_weight, Rational, WeightScheme};
