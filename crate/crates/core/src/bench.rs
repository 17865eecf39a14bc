//! Graph generators, matching-call census and growth analysis.
//!
//! Cost is measured in deterministic work units (see [`crate::instrument`]);
//! wall-clock times are reported alongside but never relied on.

use std::fmt;
use std::io::Write;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::LabeledGraph;
use crate::instrument::{Collector, InstrumentationLog, SolverKind};
use crate::mcs::mcs_tree_with;
use crate::weights::{Rational, WeightScheme};

/// Center `0` plus `n` leaves.
pub fn gen_star(n: usize) -> LabeledGraph {
    let edges: Vec<_> = (1..=n).map(|v| (0, v)).collect();
    LabeledGraph::from_edges(format!("star{n}"), n + 1, &edges).expect("valid star")
}

/// Path with `n` edges.
pub fn gen_path(n: usize) -> LabeledGraph {
    let edges: Vec<_> = (1..=n).map(|v| (v - 1, v)).collect();
    LabeledGraph::from_edges(format!("path{n}"), n + 1, &edges).expect("valid path")
}

/// Uniform random tree on `n` vertices from a Prüfer sequence.
pub fn gen_random_tree(n: usize, seed: u64) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let name = format!("tree{n}_{seed}");
    if n <= 2 {
        let edges: &[(usize, usize)] = if n == 2 { &[(0, 1)] } else { &[] };
        return LabeledGraph::from_edges(name, n, edges).expect("valid tree");
    }
    let code: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in &code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    LabeledGraph::from_edges(name, n, &edges).expect("valid tree")
}

/// Random connected outerplanar graph on `n` vertices: pendant edges and
/// cycles of length 3 to 5 (with chords fanned from one vertex) are glued
/// onto existing vertices.
pub fn gen_random_outerplanar(n: usize, seed: u64) -> LabeledGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = LabeledGraph::new(format!("outerplanar{n}_{seed}"));
    if n == 0 {
        return g;
    }
    g.add_vertex("");
    while g.order() < n {
        let at = rng.gen_range(0..g.order());
        let room = n - g.order();
        let len = if room >= 2 && rng.gen_bool(0.6) {
            rng.gen_range(3..=5.min(room + 1))
        } else {
            2
        };
        let mut ring = vec![at];
        for _ in 1..len {
            ring.push(g.add_vertex(""));
        }
        for i in 1..len {
            g.add_edge(ring[i - 1], ring[i], "").expect("fresh vertices");
        }
        if len >= 3 {
            g.add_edge(ring[len - 1], at, "").expect("fresh vertices");
            for &v in &ring[2..len - 1] {
                if rng.gen_bool(0.5) {
                    g.add_edge(at, v, "").expect("fresh chord");
                }
            }
        }
    }
    g
}

/// Random connected graph on `n` vertices: a random tree plus up to `extra`
/// further edges.
pub fn gen_random_connected(n: usize, extra: usize, seed: u64) -> LabeledGraph {
    let tree = gen_random_tree(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut edges: Vec<_> = tree.edges().map(|(_, u, v)| (u, v)).collect();
    let mut missing: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| tree.edge_between(u, v).is_none())
        .collect();
    missing.shuffle(&mut rng);
    edges.extend(missing.into_iter().take(extra));
    LabeledGraph::from_edges(format!("graph{n}_{seed}"), n, &edges).expect("valid graph")
}

/// Copy of `g` with vertex labels drawn from the first `vertex_labels`
/// letters and edge labels from the first `edge_labels` symbols.
pub fn with_random_labels(g: &LabeledGraph, vertex_labels: usize, edge_labels: usize, seed: u64) -> LabeledGraph {
    const VERTEX: [&str; 4] = ["C", "N", "O", "S"];
    const EDGE: [&str; 3] = ["-", "=", "#"];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = LabeledGraph::new(g.name());
    for _ in g.vertices() {
        out.add_vertex(VERTEX[rng.gen_range(0..vertex_labels.clamp(1, VERTEX.len()))]);
    }
    for (_, u, v) in g.edges() {
        out.add_edge(u, v, EDGE[rng.gen_range(0..edge_labels.clamp(1, EDGE.len()))])
            .expect("copied edge");
    }
    out
}

/// Instrumented maximum common subtree of two stars of order `n + 1`.
pub fn census_star(n: usize, solver: SolverKind) -> InstrumentationLog {
    census(Family::Star, n, solver).0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Two copies of the star with `n` leaves.
    Star,
    /// Two copies of the path with `n` edges.
    Path,
    /// Two random trees with `n` edges, seeded by `seed` and `seed + 1`.
    RandomTree { seed: u64 },
}

impl Family {
    pub fn generate_pair(self, n: usize) -> (LabeledGraph, LabeledGraph) {
        match self {
            Family::Star => (gen_star(n), gen_star(n)),
            Family::Path => (gen_path(n), gen_path(n)),
            Family::RandomTree { seed } => (gen_random_tree(n + 1, seed), gen_random_tree(n + 1, seed.wrapping_add(1))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::RandomTree { .. } => "random",
        })
    }
}

fn census(family: Family, n: usize, solver: SolverKind) -> (InstrumentationLog, Rational, f64) {
    let (g, h) = family.generate_pair(n);
    let collector = Collector::new();
    let start = Instant::now();
    let result = mcs_tree_with(&g, &h, &WeightScheme::default(), solver, &collector).expect("generated trees");
    let wall_ms = start.elapsed().as_secs_f64() * 1e3;
    (collector.log(), result.weight, wall_ms)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundEvaluation {
    pub pair: (String, String),
    /// `sum_g sum_h (deg g + deg h)^3`.
    pub t_comp: u128,
    /// `sum_g sum_h (deg h + 1) (deg g + deg h)^3`.
    pub t_comp_corrected: u128,
}

impl BoundEvaluation {
    pub fn ratio(&self) -> f64 {
        self.t_comp_corrected as f64 / self.t_comp as f64
    }
}

pub fn evaluate_bounds(g: &LabeledGraph, h: &LabeledGraph) -> BoundEvaluation {
    let mut t_comp = 0u128;
    let mut corrected = 0u128;
    for a in g.vertices() {
        for b in h.vertices() {
            let k = (g.degree(a) + h.degree(b)) as u128;
            t_comp += k * k * k;
            corrected += (h.degree(b) as u128 + 1) * k * k * k;
        }
    }
    BoundEvaluation {
        pair: (g.name().to_string(), h.name().to_string()),
        t_comp,
        t_comp_corrected: corrected,
    }
}

/// One benchmark run on a pair of identical family members.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub calls: usize,
    pub max_k: usize,
    pub sum_k3: u64,
    pub sum_k2: u64,
    /// Work-unit ratio to the previous size, normalised to a doubling.
    pub ratio_prev: Option<f64>,
    pub t_comp: u128,
    pub t_comp_corrected: u128,
    pub wall_ms: f64,
    pub weight: Rational,
}

impl BenchRow {
    pub fn work_units(&self) -> u64 {
        self.sum_k3 + self.sum_k2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GrowthFit {
    pub family: Family,
    pub solver: SolverKind,
    pub sizes: Vec<usize>,
    pub work_units: Vec<u64>,
    /// Least-squares slope of `log W` against `log n`.
    pub slope: f64,
    /// Work-unit ratio per doubling of `n`, one per consecutive size pair.
    pub ratios: Vec<f64>,
    pub rows: Vec<BenchRow>,
}

impl GrowthFit {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let io = |e: csv::Error| Error::Io {
            path: "csv".into(),
            message: e.to_string(),
        };
        let mut wr = csv::Writer::from_writer(out);
        wr.write_record([
            "n",
            "calls",
            "max_k",
            "sum_k3",
            "sum_k2",
            "ratio_prev",
            "t_comp",
            "t_comp_corrected",
            "wall_ms",
        ])
        .map_err(io)?;
        for r in &self.rows {
            wr.write_record([
                r.n.to_string(),
                r.calls.to_string(),
                r.max_k.to_string(),
                r.sum_k3.to_string(),
                r.sum_k2.to_string(),
                r.ratio_prev.map_or(String::new(), |x| format!("{x:.6}")),
                r.t_comp.to_string(),
                r.t_comp_corrected.to_string(),
                format!("{:.3}", r.wall_ms),
            ])
            .map_err(io)?;
        }
        wr.flush().map_err(|e| io(e.into()))
    }
}

/// Census every size of `family` and fit the growth of the work units.
///
/// Sizes must be strictly increasing and at least three.
pub fn fit_growth(family: Family, sizes: &[usize], solver: SolverKind) -> Result<GrowthFit> {
    if sizes.len() < 3 || sizes.windows(2).any(|w| w[0] >= w[1]) || sizes[0] == 0 {
        return Err(Error::InvalidArgument {
            message: "sizes must be at least three strictly increasing positive integers".into(),
        });
    }
    let mut rows: Vec<BenchRow> = Vec::with_capacity(sizes.len());
    for &n in sizes {
        let (log, weight, wall_ms) = census(family, n, solver);
        let (g, h) = family.generate_pair(n);
        let bounds = evaluate_bounds(&g, &h);
        let ratio_prev = rows.last().map(|prev| doubling_ratio(prev.n, prev.work_units(), n, log.work_units()));
        rows.push(BenchRow {
            n,
            calls: log.calls,
            max_k: log.max_k,
            sum_k3: log.sum_k3,
            sum_k2: log.sum_k2,
            ratio_prev,
            t_comp: bounds.t_comp,
            t_comp_corrected: bounds.t_comp_corrected,
            wall_ms,
            weight,
        });
    }
    let work_units: Vec<u64> = rows.iter().map(BenchRow::work_units).collect();
    let points: Vec<(f64, f64)> = rows
        .iter()
        .map(|r| ((r.n as f64).ln(), (r.work_units().max(1) as f64).ln()))
        .collect();
    Ok(GrowthFit {
        family,
        solver,
        sizes: sizes.to_vec(),
        slope: least_squares_slope(&points),
        ratios: rows.iter().filter_map(|r| r.ratio_prev).collect(),
        work_units,
        rows,
    })
}

/// `W(n2) / W(n1)` rescaled to a doubling of `n`.
fn doubling_ratio(n1: usize, w1: u64, n2: usize, w2: u64) -> f64 {
    let (w1, w2) = (w1.max(1) as f64, w2.max(1) as f64);
    (w2 / w1).powf(2f64.ln() / (n2 as f64 / n1 as f64).ln())
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    let m = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / m;
    let my = points.iter().map(|p| p.1).sum::<f64>() / m;
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    if sxx == 0.0 {
        0.0
    } else {
        sxy / sxx
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instrument::RecordKind;
    use crate::outerplanar::is_outerplanar;

    #[test]
    fn generators() {
        let s = gen_star(5);
        assert_eq!((s.order(), s.size(), s.degree(0)), (6, 5, 5));
        let p = gen_path(1);
        assert_eq!((p.order(), p.size()), (2, 1));
        for seed in 0..50 {
            let t = gen_random_tree(9, seed);
            assert!(t.is_tree() && t.order() == 9);
            assert_eq!(t, gen_random_tree(9, seed));
            let o = gen_random_outerplanar(9, seed);
            assert_eq!(o.order(), 9);
            assert!(o.is_connected() && is_outerplanar(&o).unwrap().is_outerplanar());
            let c = gen_random_connected(7, 4, seed);
            assert!(c.is_connected() && c.size() == 10);
        }
        assert_eq!(gen_random_tree(1, 3).order(), 1);
    }

    #[test]
    fn star_census() {
        for n in [3, 8] {
            let log = census_star(n, SolverKind::PerInstance);
            assert!(log.count_full_solves(2 * n - 1, n * (n - 1)) >= n);
        }
        let log = census_star(8, SolverKind::Grouped);
        assert_eq!(log.count_kind(RecordKind::GroupedBase), 1);
        assert!(log.count_kind(RecordKind::GroupedRepair) <= 8);
    }

    #[test]
    fn bounds() {
        let e = gen_path(1);
        let b = evaluate_bounds(&e, &e);
        assert_eq!((b.t_comp, b.t_comp_corrected), (32, 64));
        let s = evaluate_bounds(&gen_star(8), &gen_star(8));
        assert!(s.ratio() >= 2.0);
    }

    #[test]
    fn growth_ratios() {
        let per = fit_growth(Family::Star, &[8, 16, 32], SolverKind::PerInstance).unwrap();
        assert!(per.ratios.iter().all(|&r| (12.0..=20.0).contains(&r)), "{:?}", per.ratios);
        let grouped = fit_growth(Family::Star, &[8, 16, 32], SolverKind::Grouped).unwrap();
        assert!(grouped.ratios.iter().all(|&r| (6.0..=10.0).contains(&r)), "{:?}", grouped.ratios);
        assert!(per.rows.iter().zip(&grouped.rows).all(|(a, b)| a.weight == b.weight));
        let path = fit_growth(Family::Path, &[8, 16, 32], SolverKind::PerInstance).unwrap();
        assert!(path.slope <= 3.5);
        let random = fit_growth(Family::RandomTree { seed: 7 }, &[8, 16, 32], SolverKind::Grouped).unwrap();
        assert_eq!(random.rows.len(), 3);
        assert!(fit_growth(Family::Star, &[8, 8, 16], SolverKind::Grouped).is_err());
    }

    #[test]
    fn uneven_steps_are_normalised() {
        assert!((doubling_ratio(10, 1000, 30, 27_000) - 8.0).abs() < 1e-9);
    }
}
