//! MCS-based dissimilarity `d(G, H) = 1 - w(MCS) / max(w(G), w(H))` and an
//! exhaustive auditor for the metric axioms over a corpus.

use std::fmt;
use std::io::Write;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::instrument::SolverKind;
use crate::mcs::{maximum_common_subgraph, McsMode, McsResult};
use crate::weights::{format_decimal, format_rational, graph_weight, Rational, WeightScheme};

pub const DEFAULT_TRIPLE_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceReport {
    pub pair: (String, String),
    pub mcs_weight: Rational,
    /// `(w(G), w(H))`.
    pub denominators: (Rational, Rational),
    pub distance: Rational,
    pub mode: McsMode,
}

impl fmt::Display for DistanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d({}, {}) = {} ({}) [{}; mcs = {}, w = {} / {}]",
            self.pair.0,
            self.pair.1,
            format_rational(&self.distance),
            format_decimal(&self.distance),
            self.mode,
            format_rational(&self.mcs_weight),
            format_rational(&self.denominators.0),
            format_rational(&self.denominators.1),
        )
    }
}

/// Distance between `g` and `h`. Two weightless graphs are at distance 0.
pub fn distance(g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme, mode: McsMode) -> Result<DistanceReport> {
    let mcs = maximum_common_subgraph(g, h, w, mode, SolverKind::PerInstance)?;
    distance_from(g, h, w, &mcs)
}

/// Distance report for an already computed common subgraph.
pub fn distance_from(g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme, mcs: &McsResult) -> Result<DistanceReport> {
    let (wg, wh) = (graph_weight(g, w)?, graph_weight(h, w)?);
    let denom = wg.max(wh);
    let distance = if denom.is_zero() {
        Rational::zero()
    } else {
        Rational::one() - mcs.weight / denom
    };
    Ok(DistanceReport {
        pair: (g.name().to_string(), h.name().to_string()),
        mcs_weight: mcs.weight,
        denominators: (wg, wh),
        distance,
        mode: mcs.mode,
    })
}

/// `d(a, c) > d(a, b) + d(b, c)`, with graphs given by corpus index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d_ab: Rational,
    pub d_bc: Rational,
    pub d_ac: Rational,
    /// `d_ac - d_ab - d_bc`, positive.
    pub slack: Rational,
}

impl TriangleViolation {
    /// Recheck the stored distances.
    pub fn holds(&self) -> bool {
        self.slack == self.d_ac - self.d_ab - self.d_bc && self.slack > Rational::zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricAudit {
    pub names: Vec<String>,
    pub mode: McsMode,
    /// `distances[i][j] = d(corpus[i], corpus[j])`.
    pub distances: Vec<Vec<Rational>>,
    /// Indices `i` with `d(i, i) != 0`.
    pub identity_failures: Vec<usize>,
    /// Pairs `i < j` with `d(i, j) != d(j, i)`.
    pub symmetry_failures: Vec<(usize, usize)>,
    /// One entry per unordered triple `{a, c}` with middle `b`, `a < c`.
    pub triangle_violations: Vec<TriangleViolation>,
    pub range_failures: Vec<(usize, usize)>,
}

impl MetricAudit {
    pub fn is_metric(&self) -> bool {
        self.identity_failures.is_empty()
            && self.symmetry_failures.is_empty()
            && self.triangle_violations.is_empty()
            && self.range_failures.is_empty()
    }

    /// Violations as CSV with columns `a,b,c,d_ab,d_bc,d_ac,slack`.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io {
            path: "csv".into(),
            message: e.to_string(),
        };
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record(["a", "b", "c", "d_ab", "d_bc", "d_ac", "slack"]).map_err(io)?;
        for v in &self.triangle_violations {
            wr.write_record([
                self.names[v.a].clone(),
                self.names[v.b].clone(),
                self.names[v.c].clone(),
                format_rational(&v.d_ab),
                format_rational(&v.d_bc),
                format_rational(&v.d_ac),
                format_rational(&v.slack),
            ])
            .map_err(io)?;
        }
        wr.flush().map_err(|e| io(e.into()))
    }
}

pub fn audit_metric(corpus: &[LabeledGraph], w: &WeightScheme, mode: McsMode) -> Result<MetricAudit> {
    audit_metric_with_budget(corpus, w, mode, DEFAULT_TRIPLE_BUDGET)
}

/// [`audit_metric`] refusing corpora with more than `budget` ordered triples
/// of distinct graphs.
pub fn audit_metric_with_budget(
    corpus: &[LabeledGraph],
    w: &WeightScheme,
    mode: McsMode,
    budget: usize,
) -> Result<MetricAudit> {
    let n = corpus.len();
    let triples = n * n.saturating_sub(1) * n.saturating_sub(2);
    if triples > budget {
        return Err(Error::CorpusTooLarge { triples, budget });
    }
    let mut distances = vec![vec![Rational::zero(); n]; n];
    for (i, a) in corpus.iter().enumerate() {
        for (j, b) in corpus.iter().enumerate() {
            distances[i][j] = distance(a, b, w, mode)?.distance;
        }
    }
    let d = |i: usize, j: usize| distances[i][j];
    let mut audit = MetricAudit {
        names: corpus.iter().map(|g| g.name().to_string()).collect(),
        mode,
        identity_failures: (0..n).filter(|&i| !d(i, i).is_zero()).collect(),
        symmetry_failures: Vec::new(),
        triangle_violations: Vec::new(),
        range_failures: Vec::new(),
        distances: Vec::new(),
    };
    for i in 0..n {
        for j in 0..n {
            if i < j && d(i, j) != d(j, i) {
                audit.symmetry_failures.push((i, j));
            }
            if d(i, j) < Rational::zero() || d(i, j) > Rational::one() {
                audit.range_failures.push((i, j));
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let slack = d(a, c) - d(a, b) - d(b, c);
                let seen = audit
                    .triangle_violations
                    .iter()
                    .any(|v| v.b == b && v.a == c.min(a) && v.c == c.max(a));
                if slack > Rational::zero() && !seen {
                    audit.triangle_violations.push(TriangleViolation {
                        a,
                        b,
                        c,
                        d_ab: d(a, b),
                        d_bc: d(b, c),
                        d_ac: d(a, c),
                        slack,
                    });
                }
            }
        }
    }
    audit.distances = distances;
    Ok(audit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn corpus() -> Vec<LabeledGraph> {
        let mut t = named::triangle();
        t.set_name("G");
        let mut k = named::k4_minus_edge();
        k.set_name("H");
        let mut c = named::cycle(4);
        c.set_name("F");
        vec![t, k, c]
    }

    #[test]
    fn small_cycle_distances() {
        let c = corpus();
        let w = WeightScheme::default();
        assert_eq!(distance(&c[0], &c[1], &w, McsMode::Bbp).unwrap().distance, r(1, 3));
        assert_eq!(distance(&c[1], &c[2], &w, McsMode::Bbp).unwrap().distance, r(1, 9));
        assert_eq!(distance(&c[0], &c[2], &w, McsMode::Bbp).unwrap().distance, r(7, 8));
        assert_eq!(distance(&c[2], &c[2], &w, McsMode::Bbp).unwrap().distance, r(0, 1));
    }

    #[test]
    fn bbp_audit_finds_one_violation() {
        let audit = audit_metric(&corpus(), &WeightScheme::default(), McsMode::Bbp).unwrap();
        assert_eq!(audit.triangle_violations.len(), 1);
        let v = &audit.triangle_violations[0];
        assert_eq!((v.a, v.b, v.c), (0, 1, 2));
        assert_eq!(v.slack, r(31, 72));
        assert!(v.holds());
        assert!(audit.identity_failures.is_empty() && audit.symmetry_failures.is_empty());
        let mut buf = Vec::new();
        audit.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text, "a,b,c,d_ab,d_bc,d_ac,slack\nG,H,F,1/3,1/9,7/8,31/72\n");
    }

    #[test]
    fn plain_audit_is_clean() {
        let audit = audit_metric(&corpus(), &WeightScheme::default(), McsMode::Plain).unwrap();
        assert!(audit.is_metric(), "{audit:?}");
        let single = audit_metric(&corpus()[..1], &WeightScheme::default(), McsMode::Bbp).unwrap();
        assert!(single.is_metric());
    }

    #[test]
    fn connected_plain_mode_is_not_a_metric() {
        let mut c4 = named::cycle(4);
        c4.set_name("c4");
        let paw = LabeledGraph::from_edges("paw", 4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let claw = LabeledGraph::from_edges("claw", 4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let corpus = [c4, paw, claw];
        let w = WeightScheme::default();
        let plain = audit_metric(&corpus, &w, McsMode::Plain).unwrap();
        assert_eq!(plain.triangle_violations.len(), 1);
        let v = &plain.triangle_violations[0];
        assert_eq!((v.a, v.b, v.c, v.slack), (0, 1, 2, r(1, 8)));
        // allowing a disconnected common subgraph restores the inequality
        let general = audit_metric(&corpus, &w, McsMode::General).unwrap();
        assert!(general.is_metric());
        assert_eq!(general.distances[0][2], r(1, 4));
    }

    #[test]
    fn budget() {
        let err = audit_metric_with_budget(&corpus(), &WeightScheme::default(), McsMode::Plain, 5).unwrap_err();
        assert_eq!(err, Error::CorpusTooLarge { triples: 6, budget: 5 });
    }
}
