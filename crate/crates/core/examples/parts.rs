//! Rooted parts of a small tree and of every rooting of it.

use bbp_mcs::parts::{parts, parts_star};
use bbp_mcs::{LabeledGraph, RootedGraph};

fn main() -> bbp_mcs::Result<()> {
    let t = LabeledGraph::from_edges("spider", 6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)])?;
    let cat = parts(&RootedGraph::new(t.clone(), 0)?)?;
    println!("rooted at 0: {} parts", cat.len());
    for (i, p) in cat.parts().iter().enumerate() {
        let tag = if cat.is_compound_root(i) { " compound" } else { "" };
        println!("  {p}{tag}");
    }
    let all = parts_star(&t)?;
    println!("over all roots: {} distinct parts", all.len());
    Ok(())
}
