//! Label-dependent weights and exact rational arithmetic.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;

/// Exact weight and distance values.
pub type Rational = Ratio<i64>;

/// `p/q` rendering, with integers printed without a denominator.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Six-decimal rendering.
pub fn format_decimal(r: &Rational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

/// Parse a nonnegative decimal such as `2`, `0.25` or `.5`.
pub fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    if text.is_empty() || text.starts_with('-') || text.starts_with('+') {
        return None;
    }
    let (int, frac) = match text.split_once('.') {
        Some((i, f)) => (i, f),
        None => (text, ""),
    };
    if int.is_empty() && frac.is_empty() {
        return None;
    }
    if !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int}{frac}");
    let numer: i64 = digits.parse().ok()?;
    let denom = 10i64.checked_pow(frac.len() as u32)?;
    Some(Rational::new(numer, denom))
}

/// Weights assigned to vertex and edge labels.
///
/// Labels without an explicit entry fall back to the default for their
/// kind; the default scheme weighs every vertex and edge by 1, so that
/// `w(G) = |V(G)| + |E(G)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightScheme {
    vertex: BTreeMap<String, Rational>,
    edge: BTreeMap<String, Rational>,
    vertex_default: Option<Rational>,
    edge_default: Option<Rational>,
}

impl Default for WeightScheme {
    fn default() -> Self {
        WeightScheme::uniform(Rational::from_integer(1))
    }
}

impl WeightScheme {
    pub fn uniform(w: Rational) -> Self {
        WeightScheme {
            vertex: BTreeMap::new(),
            edge: BTreeMap::new(),
            vertex_default: Some(w),
            edge_default: Some(w),
        }
    }

    /// A scheme with no defaults: every label must be listed.
    pub fn strict() -> Self {
        WeightScheme {
            vertex: BTreeMap::new(),
            edge: BTreeMap::new(),
            vertex_default: None,
            edge_default: None,
        }
    }

    pub fn with_vertex_label(mut self, label: impl Into<String>, w: Rational) -> Self {
        self.vertex.insert(label.into(), w);
        self
    }

    pub fn with_edge_label(mut self, label: impl Into<String>, w: Rational) -> Self {
        self.edge.insert(label.into(), w);
        self
    }

    pub fn vertex_weight(&self, label: &str) -> Result<Rational> {
        lookup(&self.vertex, self.vertex_default, "vertex", label)
    }

    pub fn edge_weight(&self, label: &str) -> Result<Rational> {
        lookup(&self.edge, self.edge_default, "edge", label)
    }

    /// Parse the weight-scheme file format:
    ///
    /// ```text
    /// # comment
    /// vlabel C 12.011
    /// elabel aromatic 1.5
    /// default 1
    /// ```
    ///
    /// `default` sets the fallback for both kinds. Without it, unlisted labels
    /// are an error at lookup time.
    pub fn parse(text: &str) -> Result<Self> {
        let mut scheme = WeightScheme::strict();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let weight = |tok: &str| {
                parse_decimal(tok).ok_or_else(|| Error::Parse {
                    line,
                    message: format!("invalid weight {tok:?}"),
                })
            };
            match tokens.as_slice() {
                ["vlabel", label, w] => {
                    scheme.vertex.insert(label.to_string(), weight(w)?);
                }
                ["elabel", label, w] => {
                    scheme.edge.insert(label.to_string(), weight(w)?);
                }
                ["default", w] => {
                    let w = weight(w)?;
                    scheme.vertex_default = Some(w);
                    scheme.edge_default = Some(w);
                }
                _ => {
                    return Err(Error::Parse {
                        line,
                        message: format!("unrecognised weight line {content:?}"),
                    })
                }
            }
        }
        Ok(scheme)
    }

    /// Per-element weights of `g`, indexed by vertex and edge id.
    pub fn element_weights(&self, g: &LabeledGraph) -> Result<ElementWeights> {
        let vertex = g
            .vertices()
            .map(|v| self.vertex_weight(g.vertex_label(v)))
            .collect::<Result<Vec<_>>>()?;
        let edge = g
            .edges()
            .map(|(e, _, _)| self.edge_weight(g.edge_label(e)))
            .collect::<Result<Vec<_>>>()?;
        Ok(ElementWeights { vertex, edge })
    }
}

fn lookup(
    table: &BTreeMap<String, Rational>,
    default: Option<Rational>,
    kind: &'static str,
    label: &str,
) -> Result<Rational> {
    table
        .get(label)
        .copied()
        .or(default)
        .ok_or_else(|| Error::UnknownLabel {
            kind,
            label: label.to_string(),
        })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementWeights {
    pub vertex: Vec<Rational>,
    pub edge: Vec<Rational>,
}

impl ElementWeights {
    pub fn total(&self) -> Rational {
        self.vertex.iter().chain(&self.edge).fold(Rational::zero(), |a, b| a + b)
    }
}

/// Weight of a graph: the sum of its vertex and edge weights.
pub fn graph_weight(g: &LabeledGraph, w: &WeightScheme) -> Result<Rational> {
    Ok(w.element_weights(g)?.total())
}

/// Newtype for printing a rational as `p/q (decimal)`.
pub struct Exact<'a>(pub &'a Rational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", format_rational(self.0), format_decimal(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn default_weight_counts_vertices_and_edges() {
        let w = WeightScheme::default();
        assert_eq!(graph_weight(&named::triangle(), &w).unwrap(), r(6, 1));
        assert_eq!(graph_weight(&named::cycle(4), &w).unwrap(), r(8, 1));
        assert_eq!(graph_weight(&LabeledGraph::new("empty"), &w).unwrap(), r(0, 1));
    }

    #[test]
    fn decimals() {
        assert_eq!(parse_decimal("2"), Some(r(2, 1)));
        assert_eq!(parse_decimal("0.25"), Some(r(1, 4)));
        assert_eq!(parse_decimal(".5"), Some(r(1, 2)));
        assert_eq!(parse_decimal("12.011"), Some(r(12011, 1000)));
        assert_eq!(parse_decimal("-1"), None);
        assert_eq!(parse_decimal("1e3"), None);
        assert_eq!(parse_decimal("."), None);
    }

    #[test]
    fn scheme_file_and_unknown_label() {
        let s = WeightScheme::parse("# weights\nvlabel C 2\nelabel = 0.5\n").unwrap();
        let mut g = LabeledGraph::new("g");
        g.add_vertex("C");
        g.add_vertex("C");
        g.add_edge(0, 1, "=").unwrap();
        assert_eq!(graph_weight(&g, &s).unwrap(), r(9, 2));
        g.add_vertex("N");
        assert_eq!(
            graph_weight(&g, &s),
            Err(Error::UnknownLabel {
                kind: "vertex",
                label: "N".into()
            })
        );
        let s = WeightScheme::parse("vlabel C 2\ndefault 1\n").unwrap();
        assert_eq!(graph_weight(&g, &s).unwrap(), r(6, 1));
        assert!(matches!(WeightScheme::parse("vlabel C x"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn rendering() {
        assert_eq!(format_rational(&r(7, 8)), "7/8");
        assert_eq!(format_rational(&r(10, 1)), "10");
        assert_eq!(format_decimal(&r(1, 3)), "0.333333");
        assert_eq!(Exact(&r(31, 72)).to_string(), "31/72 (0.430556)");
    }
}
