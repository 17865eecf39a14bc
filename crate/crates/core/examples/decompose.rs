//! Blocks, bridges and outerplanar embeddings of a graph file.
//!
//! `cargo run --example decompose -- crates/core/fixtures/fig1_g.graph`

use bbp_mcs::{decompose_bc, graph::named, is_outerplanar, read_graph, Outerplanarity};

fn main() -> bbp_mcs::Result<()> {
    let g = match std::env::args().nth(1) {
        Some(path) => read_graph(path.as_ref())?,
        None => named::figure_g(),
    };
    let bc = decompose_bc(&g);
    println!("{}: {} blocks, {} bridges", g.name(), bc.blocks.len(), bc.bridges.len());
    for (i, b) in bc.blocks.iter().enumerate() {
        println!("  block {i}: vertices {:?}", b.vertices);
    }
    println!("  articulation vertices {:?}", bc.articulation_vertices);

    match is_outerplanar(&g)? {
        Outerplanarity::Outerplanar { cycles } => {
            for (i, c) in cycles.iter().enumerate() {
                println!("  block {i} outer cycle {c:?}");
            }
        }
        Outerplanarity::NotOuterplanar { block } => println!("  block {block} is not outerplanar"),
    }
    for k in [4, 5] {
        let verdict = is_outerplanar(&named::complete(k))?.is_outerplanar();
        println!("K{k} outerplanar: {verdict}");
    }
    Ok(())
}
