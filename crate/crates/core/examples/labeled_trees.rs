//! Common subtree of two labelled trees under a custom weight scheme.

use bbp_mcs::weights::format_rational;
use bbp_mcs::{mcs_tree, parse_graph, Rational, SolverKind, WeightScheme};

const ETHANOL_LIKE: &str = "graph a
v 0 C
v 1 C
v 2 O
v 3 N
e 0 1 -
e 1 2 -
e 1 3 -
";

const PROPANOL_LIKE: &str = "graph b
v 0 C
v 1 C
v 2 C
v 3 O
e 0 1 -
e 1 2 -
e 2 3 =
";

fn main() -> bbp_mcs::Result<()> {
    let (a, b) = (parse_graph(ETHANOL_LIKE)?, parse_graph(PROPANOL_LIKE)?);
    let w = WeightScheme::default()
        .with_vertex_label("C", Rational::from_integer(2))
        .with_edge_label("=", Rational::new(3, 2));
    for solver in [SolverKind::PerInstance, SolverKind::Grouped] {
        let r = mcs_tree(&a, &b, &w, solver)?;
        println!("{solver:?}: weight {} with {} shared vertices", format_rational(&r.weight), r.vertex_map.len());
    }
    Ok(())
}
