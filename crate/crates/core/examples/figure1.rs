//! Unrestricted versus block-and-bridge-preserving common subgraph on the
//! two graphs of the running example.
//!
//! `cargo run --example figure1`

use bbp_mcs::graph::named;
use bbp_mcs::mcs::{check_bbp, mcs_bbp, mcs_oracle, McsMode};
use bbp_mcs::weights::format_rational;
use bbp_mcs::{SolverKind, WeightScheme};

fn main() -> bbp_mcs::Result<()> {
    let (g, h) = (named::figure_g(), named::figure_h());
    let w = WeightScheme::default();

    let plain = mcs_oracle(&g, &h, &w, McsMode::Plain)?;
    let bbp = mcs_bbp(&g, &h, &w, SolverKind::PerInstance)?;

    println!("G: {} vertices, {} edges", g.order(), g.size());
    println!("H: {} vertices, {} edges", h.order(), h.size());
    println!("plain MCS weight = {}", format_rational(&plain.weight));
    println!("BBP MCS weight   = {}", format_rational(&bbp.weight));

    match check_bbp(&plain, &g, &h) {
        Ok(()) => println!("the plain optimum happens to preserve blocks and bridges"),
        Err(v) => println!("the plain optimum is not BBP: {v}"),
    }

    println!("BBP mapping:");
    for &(x, y) in &bbp.vertex_map {
        println!("  {x} -> {y}");
    }
    Ok(())
}
