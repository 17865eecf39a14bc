//! Command line front end. [`run`] parses arguments, dispatches, and returns
//! the process exit code: 0 on success, 1 on a domain error, 2 on a usage
//! error.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{error::ErrorKind, Parser, Subcommand, ValueEnum};

use crate::bc::decompose_bc;
use crate::bench::{fit_growth, Family};
use crate::error::{Error, Result};
use crate::format::read_graph;
use crate::graph::{LabeledGraph, RootedGraph};
use crate::instrument::SolverKind;
use crate::mcs::{maximum_common_subgraph, mcs_bbp, mcs_oracle, McsMode, McsResult};
use crate::metric::{audit_metric_with_budget, distance_from, DEFAULT_TRIPLE_BUDGET};
use crate::outerplanar::{is_outerplanar, Outerplanarity};
use crate::parts::{parts, parts_star};
use crate::weights::{format_decimal, format_rational, Exact, WeightScheme};

#[derive(Parser, Debug)]
#[command(name = "bbp-mcs", version, about = "Maximum common subgraphs of trees and outerplanar graphs")]
struct Cli {
    /// Weight scheme file (`vlabel`, `elabel` and `default` lines).
    #[arg(long, global = true)]
    weights: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for randomly generated inputs.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Engine {
    Bbp,
    Plain,
    OracleBbp,
    OraclePlain,
    /// Exhaustive search over common subgraphs that need not be connected.
    OracleGeneral,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Mode {
    Bbp,
    Plain,
    General,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Solver {
    PerInstance,
    Grouped,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum BenchFamily {
    Star,
    Path,
    Random,
}

impl From<Solver> for SolverKind {
    fn from(s: Solver) -> Self {
        match s {
            Solver::PerInstance => SolverKind::PerInstance,
            Solver::Grouped => SolverKind::Grouped,
        }
    }
}

impl From<Mode> for McsMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Bbp => McsMode::Bbp,
            Mode::Plain => McsMode::Plain,
            Mode::General => McsMode::General,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Maximum common subgraph of two graphs.
    Mcs {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Bbp)]
        mode: Engine,
        #[arg(long, value_enum, default_value_t = Solver::PerInstance)]
        solver: Solver,
        /// Also print the vertex and edge maps.
        #[arg(long)]
        print_mapping: bool,
    },
    /// Distance `1 - w(MCS) / max(w(A), w(B))`.
    Distance {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, value_enum, default_value_t = Engine::Bbp)]
        mode: Engine,
        #[arg(long, value_enum, default_value_t = Solver::PerInstance)]
        solver: Solver,
    },
    /// Check identity, symmetry and the triangle inequality over a corpus.
    MetricAudit {
        /// Graph files or directories of `.graph` files.
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Mode::Bbp)]
        mode: Mode,
        /// Write violations to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Largest number of ordered triples to examine.
        #[arg(long, default_value_t = DEFAULT_TRIPLE_BUDGET)]
        budget: usize,
    },
    /// Rooted parts of a tree.
    Parts {
        file: PathBuf,
        #[arg(long, conflicts_with = "all_roots")]
        root: Option<usize>,
        /// Union of the parts over every root.
        #[arg(long)]
        all_roots: bool,
        #[arg(long)]
        counts_only: bool,
    },
    /// Blocks, bridges and articulation vertices.
    Decompose { file: PathBuf },
    /// Exact outerplanarity test.
    CheckOuterplanar { file: PathBuf },
    /// Matching-call census and work-unit growth.
    Bench {
        #[arg(value_enum)]
        family: BenchFamily,
        #[arg(long, value_delimiter = ',', default_value = "32,64,128")]
        sizes: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Solver::PerInstance)]
        solver: Solver,
        /// Write the table to this CSV file.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

/// Run with process arguments, printing to stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(args, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}

/// Run with explicit output streams.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let help = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let target: &mut dyn Write = if help { out } else { err };
            let _ = write!(target, "{}", e.render());
            return if help { 0 } else { 2 };
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn io_error(path: &Path, e: impl ToString) -> Error {
    Error::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    }
}

fn load_weights(cli: &Cli) -> Result<WeightScheme> {
    match &cli.weights {
        Some(p) => WeightScheme::parse(&std::fs::read_to_string(p).map_err(|e| io_error(p, e))?),
        None => Ok(WeightScheme::default()),
    }
}

fn solve(g: &LabeledGraph, h: &LabeledGraph, w: &WeightScheme, engine: Engine, solver: Solver) -> Result<McsResult> {
    match engine {
        Engine::Bbp => mcs_bbp(g, h, w, solver.into()),
        Engine::Plain => maximum_common_subgraph(g, h, w, McsMode::Plain, solver.into()),
        Engine::OracleBbp => mcs_oracle(g, h, w, McsMode::Bbp),
        Engine::OraclePlain => mcs_oracle(g, h, w, McsMode::Plain),
        Engine::OracleGeneral => mcs_oracle(g, h, w, McsMode::General),
    }
}

/// Header plus one record, quoted as needed.
fn csv_table(header: &[&str], row: &[String]) -> Result<String> {
    let io = |e: csv::Error| Error::Io {
        path: "csv".into(),
        message: e.to_string(),
    };
    let mut wr = csv::Writer::from_writer(Vec::new());
    wr.write_record(header).map_err(io)?;
    wr.write_record(row).map_err(io)?;
    let bytes = wr.into_inner().map_err(|e| io(e.into_error().into()))?;
    Ok(String::from_utf8_lossy(&bytes).into_owned())
}

fn write_file(path: &Path, f: impl FnOnce(&mut std::fs::File) -> Result<()>) -> Result<()> {
    let mut file = std::fs::File::create(path).map_err(|e| io_error(path, e))?;
    f(&mut file)
}

fn execute(cli: &Cli) -> Result<String> {
    let w = load_weights(cli)?;
    let csv = matches!(cli.format, Format::Csv);
    let mut s = String::new();
    match &cli.command {
        Command::Mcs {
            a,
            b,
            mode,
            solver,
            print_mapping,
        } => {
            let (g, h) = (read_graph(a)?, read_graph(b)?);
            let r = solve(&g, &h, &w, *mode, *solver)?;
            if csv {
                s.push_str(&csv_table(
                    &["mode", "weight", "weight_decimal", "vertices", "edges"],
                    &[
                        r.mode.to_string(),
                        format_rational(&r.weight),
                        format_decimal(&r.weight),
                        r.vertex_map.len().to_string(),
                        r.edge_map.len().to_string(),
                    ],
                )?);
            } else {
                let _ = writeln!(s, "mode = {}", r.mode);
                let _ = writeln!(s, "weight = {}", format_rational(&r.weight));
                let _ = writeln!(s, "weight_decimal = {}", format_decimal(&r.weight));
            }
            if *print_mapping {
                for &(x, y) in &r.vertex_map {
                    let _ = writeln!(s, "vertex {x} -> {y}");
                }
                for &(eg, eh) in &r.edge_map {
                    let ((a1, a2), (b1, b2)) = (g.endpoints(eg), h.endpoints(eh));
                    let _ = writeln!(s, "edge {a1}-{a2} -> {b1}-{b2}");
                }
            }
        }
        Command::Distance { a, b, mode, solver } => {
            let (g, h) = (read_graph(a)?, read_graph(b)?);
            let r = solve(&g, &h, &w, *mode, *solver)?;
            let d = distance_from(&g, &h, &w, &r)?;
            if csv {
                s.push_str(&csv_table(
                    &["a", "b", "mode", "mcs_weight", "weight_a", "weight_b", "distance", "distance_decimal"],
                    &[
                        d.pair.0.clone(),
                        d.pair.1.clone(),
                        d.mode.to_string(),
                        format_rational(&d.mcs_weight),
                        format_rational(&d.denominators.0),
                        format_rational(&d.denominators.1),
                        format_rational(&d.distance),
                        format_decimal(&d.distance),
                    ],
                )?);
            } else {
                let _ = writeln!(s, "distance = {}", format_rational(&d.distance));
                let _ = writeln!(s, "distance_decimal = {}", format_decimal(&d.distance));
                let _ = writeln!(s, "mcs_weight = {}", format_rational(&d.mcs_weight));
                let _ = writeln!(s, "weight_a = {}", format_rational(&d.denominators.0));
                let _ = writeln!(s, "weight_b = {}", format_rational(&d.denominators.1));
            }
        }
        Command::MetricAudit {
            inputs,
            mode,
            csv: csv_out,
            budget,
        } => {
            let corpus = load_corpus(inputs)?;
            let audit = audit_metric_with_budget(&corpus, &w, (*mode).into(), *budget)?;
            if let Some(path) = csv_out {
                write_file(path, |f| audit.write_csv(f))?;
            }
            if csv {
                let mut buf = Vec::new();
                audit.write_csv(&mut buf)?;
                s.push_str(&String::from_utf8_lossy(&buf));
            } else {
                let _ = writeln!(s, "mode = {}", audit.mode);
                let _ = writeln!(s, "graphs = {}", audit.names.join(", "));
                for (i, row) in audit.distances.iter().enumerate() {
                    for (j, d) in row.iter().enumerate() {
                        if i < j {
                            let _ = writeln!(s, "d({}, {}) = {}", audit.names[i], audit.names[j], Exact(d));
                        }
                    }
                }
                let _ = writeln!(s, "identity_failures = {}", audit.identity_failures.len());
                let _ = writeln!(s, "symmetry_failures = {}", audit.symmetry_failures.len());
                let _ = writeln!(s, "violations = {}", audit.triangle_violations.len());
                for v in &audit.triangle_violations {
                    let _ = writeln!(
                        s,
                        "violation a={} b={} c={} d_ab={} d_bc={} d_ac={} slack={}",
                        audit.names[v.a],
                        audit.names[v.b],
                        audit.names[v.c],
                        format_rational(&v.d_ab),
                        format_rational(&v.d_bc),
                        format_rational(&v.d_ac),
                        Exact(&v.slack)
                    );
                }
            }
        }
        Command::Parts {
            file,
            root,
            all_roots,
            counts_only,
        } => {
            let g = read_graph(file)?;
            let cat = if *all_roots {
                parts_star(&g)?
            } else {
                parts(&RootedGraph::new(g, root.unwrap_or(0))?)?
            };
            if *counts_only {
                let compound = (0..cat.len()).filter(|&i| cat.is_compound_root(i)).count();
                let _ = writeln!(s, "parts = {}", cat.len());
                let _ = writeln!(s, "compound_roots = {compound}");
            } else {
                for p in cat.parts() {
                    let _ = writeln!(s, "{p}");
                }
            }
        }
        Command::Decompose { file } => {
            let g = read_graph(file)?;
            let bc = decompose_bc(&g);
            let edge = |e| {
                let (u, v) = g.endpoints(e);
                format!("{u}-{v}")
            };
            let _ = writeln!(s, "blocks = {}", bc.blocks.len());
            for (i, b) in bc.blocks.iter().enumerate() {
                let vs: Vec<String> = b.vertices.iter().map(|v| v.to_string()).collect();
                let es: Vec<String> = b.edges.iter().map(|&e| edge(e)).collect();
                let _ = writeln!(s, "block {i} vertices={{{}}} edges={{{}}}", vs.join(","), es.join(","));
            }
            let _ = writeln!(s, "bridges = {}", bc.bridges.len());
            for &e in &bc.bridges {
                let _ = writeln!(s, "bridge {}", edge(e));
            }
            let arts: Vec<String> = bc.articulation_vertices.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "articulation = {{{}}}", arts.join(","));
        }
        Command::CheckOuterplanar { file } => {
            let g = read_graph(file)?;
            match is_outerplanar(&g)? {
                Outerplanarity::Outerplanar { cycles } => {
                    let _ = writeln!(s, "outerplanar = true");
                    for (i, c) in cycles.iter().enumerate() {
                        let vs: Vec<String> = c.iter().map(|v| v.to_string()).collect();
                        let _ = writeln!(s, "block {i} cycle = {}", vs.join(" "));
                    }
                }
                Outerplanarity::NotOuterplanar { block } => {
                    let _ = writeln!(s, "outerplanar = false");
                    let _ = writeln!(s, "block = {block}");
                }
            }
        }
        Command::Bench {
            family,
            sizes,
            solver,
            csv: csv_out,
        } => {
            let family = match family {
                BenchFamily::Star => Family::Star,
                BenchFamily::Path => Family::Path,
                BenchFamily::Random => Family::RandomTree { seed: cli.seed },
            };
            let fit = fit_growth(family, sizes, (*solver).into())?;
            if let Some(path) = csv_out {
                write_file(path, |f| fit.write_csv(f))?;
            }
            if csv {
                let mut buf = Vec::new();
                fit.write_csv(&mut buf)?;
                s.push_str(&String::from_utf8_lossy(&buf));
            } else {
                let _ = writeln!(
                    s,
                    "{:>6} {:>7} {:>6} {:>16} {:>12} {:>8} {:>14} {:>18} {:>10}",
                    "n", "calls", "max_k", "sum_k3", "sum_k2", "ratio", "t_comp", "t_comp_corr", "wall_ms"
                );
                for r in &fit.rows {
                    let ratio = r.ratio_prev.map_or("-".to_string(), |x| format!("{x:.3}"));
                    let _ = writeln!(
                        s,
                        "{:>6} {:>7} {:>6} {:>16} {:>12} {:>8} {:>14} {:>18} {:>10.3}",
                        r.n, r.calls, r.max_k, r.sum_k3, r.sum_k2, ratio, r.t_comp, r.t_comp_corrected, r.wall_ms
                    );
                }
                let _ = writeln!(s, "slope = {:.3}", fit.slope);
            }
        }
    }
    Ok(s)
}

/// Graph files, expanding directories to their `.graph` files in name order.
fn load_corpus(inputs: &[PathBuf]) -> Result<Vec<LabeledGraph>> {
    let mut files = Vec::new();
    for p in inputs {
        if p.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(p)
                .map_err(|e| io_error(p, e))?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|f| f.extension().is_some_and(|x| x == "graph"))
                .collect();
            found.sort();
            files.extend(found);
        } else {
            files.push(p.clone());
        }
    }
    files.iter().map(|f| read_graph(f)).collect()
}
