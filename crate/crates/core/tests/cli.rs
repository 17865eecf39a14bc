use std::path::{Path, PathBuf};

use bbp_mcs::cli::run_with;

fn fixture(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> (i32, String, String) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("bbp-mcs").chain(args.iter().copied());
    let code = run_with(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<csv::StringRecord>) {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let header = rd.headers().unwrap().iter().map(String::from).collect();
    let rows = rd.records().collect::<Result<_, _>>().unwrap();
    (header, rows)
}

#[test]
fn figure_one_bbp_weight() {
    let (g, h) = (fixture("fig1_g.graph"), fixture("fig1_h.graph"));
    let (code, out, _) = run(&["mcs", &g, &h, "--mode", "bbp"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "weight = 10"), "{out}");
    assert!(out.contains("weight_decimal = 10.000000"));
    let (_, out, _) = run(&["mcs", &g, &h, "--mode", "oracle-plain"]);
    assert!(out.lines().any(|l| l == "weight = 17"), "{out}");
}

#[test]
fn triangle_to_square_distance() {
    let (t, c) = (fixture("metric/triangle.graph"), fixture("metric/c4.graph"));
    let (code, out, _) = run(&["distance", &t, &c, "--mode", "bbp"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "distance = 7/8"), "{out}");
    assert!(out.contains("0.875000"));
}

#[test]
fn single_vertex_self_match() {
    let a = fixture("single_vertex.graph");
    let (code, out, _) = run(&["mcs", &a, &a, "--mode", "plain"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "weight = 1"), "{out}");
}

#[test]
fn mapping_is_printed() {
    let p = fixture("path3.graph");
    let (code, out, _) = run(&["mcs", &p, &p, "--mode", "bbp", "--print-mapping"]);
    assert_eq!(code, 0);
    assert!(out.contains("weight = 5"));
    assert_eq!(out.lines().filter(|l| l.starts_with("vertex ")).count(), 3);
    assert_eq!(out.lines().filter(|l| l.starts_with("edge ")).count(), 2);
}

#[test]
fn weights_file_is_applied() {
    let p = fixture("path3.graph");
    let wf = fixture("molecule.weights");
    let (code, out, _) = run(&["mcs", &p, &p, "--weights", &wf]);
    assert_eq!(code, 0, "{out}");
    // labels a, b, c fall back to the default of 1
    assert!(out.contains("weight = 5"), "{out}");
}

#[test]
fn usage_errors_exit_two() {
    let (code, _, err) = run(&["mcs", "--bogus"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());
    let (code, _, _) = run(&[]);
    assert_eq!(code, 2);
    let g = fixture("fig1_g.graph");
    let (code, _, _) = run(&["mcs", &g, &g, "--mode", "sideways"]);
    assert_eq!(code, 2);
    let (code, out, _) = run(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("metric-audit"));
}

#[test]
fn domain_errors_exit_one_with_name() {
    let k4 = fixture("k4.graph");
    let (code, out, _) = run(&["check-outerplanar", &k4]);
    assert_eq!(code, 0);
    assert!(out.contains("outerplanar = false"));
    let (code, _, err) = run(&["mcs", &k4, &k4, "--mode", "bbp"]);
    assert_eq!(code, 1);
    assert!(err.contains("NotOuterplanar"), "{err}");
    let missing = fixture("nope.graph");
    let (code, _, err) = run(&["mcs", &missing, &k4]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "));
    let (code, _, err) = run(&["bench", "star", "--sizes", "8,8,16"]);
    assert_eq!(code, 1);
    assert!(err.contains("InvalidArgument"), "{err}");
}

#[test]
fn metric_audit_reports_violation_and_csv_round_trips() {
    let dir = fixture("metric");
    let (code, out, _) = run(&["metric-audit", &dir, "--mode", "bbp"]);
    assert_eq!(code, 0);
    assert!(out.contains("violations = 1"), "{out}");
    assert!(out.contains("slack=31/72"));

    let path = scratch("audit.csv");
    let (code, _, _) = run(&["metric-audit", &dir, "--mode", "bbp", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(header, ["a", "b", "c", "d_ab", "d_bc", "d_ac", "slack"]);
    assert_eq!(rows.len(), 1);
    assert_eq!(&rows[0][6], "31/72");

    let (_, out, _) = run(&["metric-audit", &dir, "--mode", "general", "--format", "csv"]);
    let (_, rows) = csv_rows(&out);
    assert!(rows.is_empty());
}

#[test]
fn every_csv_output_parses() {
    let (g, h) = (fixture("fig1_g.graph"), fixture("fig1_h.graph"));
    let (_, out, _) = run(&["mcs", &g, &h, "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header, ["mode", "weight", "weight_decimal", "vertices", "edges"]);
    assert_eq!(&rows[0][1], "10");

    let (_, out, _) = run(&["distance", &g, &h, "--format", "csv"]);
    let (header, rows) = csv_rows(&out);
    assert_eq!(header.len(), 8);
    assert_eq!(rows[0].len(), 8);

    let (code, out, _) = run(&["bench", "star", "--sizes", "4,8,16", "--format", "csv"]);
    assert_eq!(code, 0);
    let (header, rows) = csv_rows(&out);
    for col in ["n", "calls", "max_k", "sum_k3", "sum_k2", "ratio_prev", "t_comp", "t_comp_corrected", "wall_ms"] {
        assert!(header.iter().any(|h| h == col), "missing {col}");
    }
    assert_eq!(rows.len(), 3);
    let n: Vec<usize> = rows.iter().map(|r| r[0].parse().unwrap()).collect();
    assert_eq!(n, [4, 8, 16]);
}

#[test]
fn bench_csv_file_matches_stdout_rows() {
    let path = scratch("bench.csv");
    let (code, _, _) = run(&["bench", "path", "--sizes", "4,8,12", "--csv", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let (_, rows) = csv_rows(&std::fs::read_to_string(&path).unwrap());
    assert_eq!(rows.len(), 3);
}

#[test]
fn parts_and_decompose() {
    let p = fixture("path3.graph");
    let (code, out, _) = run(&["parts", &p, "--root", "1", "--counts-only"]);
    assert_eq!(code, 0);
    assert!(out.contains("parts = "));
    let (code, out, _) = run(&["parts", &p, "--all-roots"]);
    assert_eq!(code, 0);
    assert!(out.lines().all(|l| l.starts_with("root=")), "{out}");
    let (code, _, _) = run(&["parts", &p, "--root", "0", "--all-roots"]);
    assert_eq!(code, 2);

    let g = fixture("fig1_g.graph");
    let (code, out, _) = run(&["decompose", &g]);
    assert_eq!(code, 0);
    assert!(out.starts_with("blocks = "));
    assert!(out.contains("bridges = "));
}

#[test]
fn identical_invocations_identical_output() {
    let args = ["bench", "random", "--sizes", "6,8,10", "--seed", "7", "--solver", "grouped", "--format", "csv"];
    let strip = |s: String| -> Vec<String> {
        // wall-clock column aside
        let (_, rows) = csv_rows(&s);
        rows.iter().map(|r| r.iter().take(8).collect::<Vec<_>>().join(",")).collect()
    };
    let (_, a, _) = run(&args);
    let (_, b, _) = run(&args);
    assert_eq!(strip(a), strip(b));

    let dir = fixture("metric");
    let first = run(&["metric-audit", &dir, "--mode", "plain"]);
    assert_eq!(first, run(&["metric-audit", &dir, "--mode", "plain"]));
}
