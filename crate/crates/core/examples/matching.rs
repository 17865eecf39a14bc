//! Maximum-weight bipartite matching with exact rational weights, and a
//! family of instances that each drop one right vertex.

use bbp_mcs::matching::{solve_bruteforce, solve_family, solve_hungarian, MatchingInstance};
use bbp_mcs::weights::format_rational;
use bbp_mcs::Rational;

fn main() -> bbp_mcs::Result<()> {
    let r = Rational::new;
    let inst = MatchingInstance::from_pairs(
        3,
        3,
        &[(0, 0, r(3, 2)), (0, 1, r(1, 1)), (1, 0, r(2, 1)), (1, 2, r(1, 3)), (2, 1, r(5, 4))],
    )?;

    let best = solve_hungarian(&inst);
    println!("hungarian: {} via {:?}", format_rational(&best.weight), best.pairs);
    println!("brute force: {}", format_rational(&solve_bruteforce(&inst)?.weight));

    for (deleted, weight) in solve_family(&inst, &[0, 1, 2])? {
        println!("without right {deleted}: {}", format_rational(&weight));
    }
    Ok(())
}
