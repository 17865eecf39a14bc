//! Compare the naive running-time bound with the one that charges every
//! excluded neighbour its own matching.

use bbp_mcs::bench::{evaluate_bounds, gen_path, gen_random_tree, gen_star};

fn main() {
    for n in [8, 16, 32, 64] {
        let b = evaluate_bounds(&gen_star(n), &gen_star(n));
        println!("star {n:>3}: t_comp={:>12} corrected={:>14} ratio={:.2}", b.t_comp, b.t_comp_corrected, b.ratio());
    }
    let b = evaluate_bounds(&gen_path(40), &gen_path(40));
    println!("path  40: ratio={:.2}", b.ratio());
    let b = evaluate_bounds(&gen_random_tree(40, 1), &gen_random_tree(40, 2));
    println!("random 40: ratio={:.2}", b.ratio());
}
