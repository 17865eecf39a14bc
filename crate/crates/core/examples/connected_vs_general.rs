//! Requiring the common subgraph to be connected breaks the triangle
//! inequality even without the block-and-bridge restriction.
//!
//! `cargo run --example connected_vs_general`

use bbp_mcs::graph::named;
use bbp_mcs::metric::audit_metric;
use bbp_mcs::weights::format_rational;
use bbp_mcs::{LabeledGraph, McsMode, WeightScheme};

fn main() -> bbp_mcs::Result<()> {
    let mut c4 = named::cycle(4);
    c4.set_name("c4");
    let paw = LabeledGraph::from_edges("paw", 4, &[(0, 1), (1, 2), (2, 0), (2, 3)])?;
    let claw = LabeledGraph::from_edges("claw", 4, &[(0, 1), (0, 2), (0, 3)])?;
    let corpus = [c4, paw, claw];

    for mode in [McsMode::Plain, McsMode::General] {
        let audit = audit_metric(&corpus, &WeightScheme::default(), mode)?;
        println!("{mode}:");
        for i in 0..corpus.len() {
            for j in i + 1..corpus.len() {
                println!(
                    "  d({}, {}) = {}",
                    audit.names[i],
                    audit.names[j],
                    format_rational(&audit.distances[i][j])
                );
            }
        }
        println!("  triangle violations: {}", audit.triangle_violations.len());
    }
    Ok(())
}
