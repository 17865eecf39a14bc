//! Count the matching problems the tree algorithm solves on a pair of stars.
//!
//! `cargo run --release --example star_census -- 8 16 32`

use bbp_mcs::bench::{census_star, gen_star};
use bbp_mcs::parts::{parts, parts_star};
use bbp_mcs::{RootedGraph, SolverKind};

fn main() -> bbp_mcs::Result<()> {
    let sizes: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let sizes = if sizes.is_empty() { vec![4, 8, 16, 32] } else { sizes };

    println!("{:>4} {:>6} {:>10} {:>7} {:>6} {:>12} {:>7} {:>10}", "n", "parts", "parts_star", "solves", "max_k", "sum_k3", "grouped", "sum_k2");
    for n in sizes {
        let star = gen_star(n);
        let p = parts(&RootedGraph::new(star.clone(), 0)?)?.len();
        let ps = parts_star(&star)?.len();
        let per = census_star(n, SolverKind::PerInstance);
        let grp = census_star(n, SolverKind::Grouped);
        let full = per.count_full_solves(2 * n - 1, n * (n - 1));
        println!(
            "{n:>4} {p:>6} {ps:>10} {full:>7} {:>6} {:>12} {:>7} {:>10}",
            per.max_k, per.sum_k3, grp.calls, grp.sum_k2
        );
    }
    Ok(())
}
