//! Audit the triangle, K4 minus an edge and C4 for the metric axioms under
//! both common-subgraph notions.
//!
//! `cargo run --example metric_counterexample`

use bbp_mcs::graph::named;
use bbp_mcs::metric::{audit_metric, distance};
use bbp_mcs::weights::format_rational;
use bbp_mcs::{McsMode, WeightScheme};

fn main() -> bbp_mcs::Result<()> {
    let mut corpus = vec![named::triangle(), named::k4_minus_edge(), named::cycle(4)];
    for (g, name) in corpus.iter_mut().zip(["G", "H", "F"]) {
        g.set_name(name);
    }
    let w = WeightScheme::default();

    for (a, b) in [(0, 1), (1, 2), (0, 2)] {
        println!("{}", distance(&corpus[a], &corpus[b], &w, McsMode::Bbp)?);
    }

    for mode in [McsMode::Bbp, McsMode::Plain] {
        let audit = audit_metric(&corpus, &w, mode)?;
        println!("\n{mode}: metric = {}", audit.is_metric());
        for v in &audit.triangle_violations {
            println!(
                "  d({a},{c}) = {} > d({a},{b}) + d({b},{c}) = {} + {}  (slack {})",
                format_rational(&v.d_ac),
                format_rational(&v.d_ab),
                format_rational(&v.d_bc),
                format_rational(&v.slack),
                a = audit.names[v.a],
                b = audit.names[v.b],
                c = audit.names[v.c],
            );
        }
    }
    Ok(())
}
