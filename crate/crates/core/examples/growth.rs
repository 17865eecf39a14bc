//! Fit the growth exponent of matching work on star pairs for both solvers.
//!
//! `cargo run --release --example growth`

use bbp_mcs::bench::{fit_growth, Family};
use bbp_mcs::SolverKind;

fn main() -> bbp_mcs::Result<()> {
    let sizes = [8, 16, 32, 64];
    for solver in [SolverKind::PerInstance, SolverKind::Grouped] {
        let fit = fit_growth(Family::Star, &sizes, solver)?;
        println!("{} / {solver:?}: slope {:.3}", fit.family, fit.slope);
        for r in &fit.rows {
            let ratio = r.ratio_prev.map_or("-".into(), |x| format!("{x:.2}"));
            println!("  n={:<4} work={:<14} ratio={ratio}", r.n, r.work_units());
        }
    }
    fit_growth(Family::Star, &sizes, SolverKind::Grouped)?.write_csv(std::io::stdout())
}
