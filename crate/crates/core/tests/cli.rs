use std::io::Write;
use std::process::{Command, Output};
use std::time::{Duration, Instant};

use spintheta::report::parse_report;

fn spintheta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spintheta"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn value(report: &str, key: &str) -> String {
    parse_report(report)
        .into_iter()
        .find(|(k, _)| k == key)
        .unwrap_or_else(|| panic!("no key {key}"))
        .1
}

#[test]
fn theta_octonion_printout() {
    let o = spintheta(&["theta", "--builtin", "octonion"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 8);
    assert_eq!(
        lines[0],
        "   2.0000    0.0000    0.0000    0.0000    0.0000    0.0000    0.0000    0.0000"
    );
    for line in &lines[1..] {
        assert!(line.split_whitespace().all(|x| x == "0.0000"), "{line}");
    }
}

#[test]
fn theta_report_keys() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("theta.txt");
    let o = spintheta(&[
        "theta",
        "--builtin",
        "carcass",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(&path).unwrap();
    assert_eq!(report.lines().count(), 64);
    assert_eq!(value(&report, "theta.0.0").parse::<f64>().unwrap(), 1.0);
    assert_eq!(value(&report, "theta.7.7").parse::<f64>().unwrap(), -1.0);
    assert_eq!(value(&report, "theta.3.4").parse::<f64>().unwrap(), 0.0);
}

#[test]
fn classify_isomorphic_pair() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.txt");
    let o = spintheta(&[
        "classify",
        "--builtin",
        "octonion",
        "--builtin",
        "octonion-noncanonical",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict: isomorphic"));
    let report = std::fs::read_to_string(&path).unwrap();
    assert_eq!(value(&report, "verdict"), "isomorphic");
    for k in 0..8 {
        let want = if k == 0 { 2.0 } else { 0.0 };
        for side in ["a", "b"] {
            let got: f64 = value(&report, &format!("{side}.eigenvalue.{k}"))
                .parse()
                .unwrap();
            assert!((got - want).abs() < 1e-9);
        }
    }
}

#[test]
fn classify_not_isomorphic_exit_code() {
    let o = spintheta(&[
        "classify",
        "--builtin",
        "octonion",
        "--builtin",
        "quaternion-analog",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stdout(&o).contains("verdict: not-isomorphic"));
}

#[test]
fn eigen_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.txt");
    let o = spintheta(&[
        "eigen",
        "--builtin",
        "quaternion-analog",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(&path).unwrap();
    let eig: Vec<f64> = (0..8)
        .map(|k| value(&report, &format!("eigenvalue.{k}")).parse().unwrap())
        .collect();
    for (g, w) in eig.iter().zip([0.5, 0.5, 0.5, 0.5, 0.0, 0.0, 0.0, 0.0]) {
        assert!((g - w).abs() < 1e-9);
    }
    assert_eq!(value(&report, "has_identity"), "true");
}

#[test]
fn autdim_octonion() {
    let o = spintheta(&["autdim", "--builtin", "octonion"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for line in [
        "rank.identity=7",
        "rank.theta=7",
        "rank.combined=14",
        "dimension=14",
    ] {
        assert!(text.lines().any(|l| l == line), "{line}");
    }
    assert!(text.contains("-T12 -T34 +T56 +T78 = 0"));
    assert!(text.contains("+T18 = 0"));
}

#[test]
fn roundtrip_octonion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rt.txt");
    let o = spintheta(&[
        "roundtrip",
        "--builtin",
        "octonion",
        "--report",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let report = std::fs::read_to_string(&path).unwrap();
    let dev: f64 = value(&report, "roundtrip.max_deviation").parse().unwrap();
    assert!(dev < 1e-8);
}

#[test]
fn check_printed_noncanonical_table_reports_violations() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/tables/as-printed/table6.tbl");
    let o = spintheta(&["check", path]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(!text.contains("alternative-elastic violations: 0"));
}

#[test]
fn selftest_is_fast() {
    let start = Instant::now();
    let o = spintheta(&["selftest"]);
    let elapsed = start.elapsed();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("all checks passed"));
    assert!(elapsed < Duration::from_secs(1), "{elapsed:?}");
}

#[test]
fn file_input_and_parse_errors() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("oct.tbl");
    std::fs::write(&good, spintheta::builtin("octonion").unwrap().render()).unwrap();
    let o = spintheta(&["classify", good.to_str().unwrap(), "--builtin", "octonion"]);
    assert_eq!(o.status.code(), Some(0));

    let bad = dir.path().join("bad.tbl");
    let mut f = std::fs::File::create(&bad).unwrap();
    writeln!(f, "# broken").unwrap();
    writeln!(f, "e0 e1 e2 e3 e4 e5 e6 x7").unwrap();
    drop(f);
    let o = spintheta(&["theta", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn usage_errors_exit_one() {
    assert_eq!(spintheta(&["theta"]).status.code(), Some(1));
    assert_eq!(spintheta(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        spintheta(&["theta", "/nonexistent/table.tbl"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        spintheta(&["theta", "--builtin", "sedenion"]).status.code(),
        Some(1)
    );
}

#[test]
fn help_lists_builtins() {
    let o = spintheta(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for info in spintheta::algebra::BUILTINS {
        assert!(text.contains(info.name));
        assert!(text.contains(&format!("table {}", info.table_number)));
    }
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["theta", "--builtin", "octonion-noncanonical"][..],
        &["autdim", "--builtin", "quaternion-analog"][..],
        &[
            "classify",
            "--builtin",
            "gen-octonion-e1",
            "--builtin",
            "gen-octonion-e4",
        ][..],
    ] {
        assert_eq!(spintheta(args).stdout, spintheta(args).stdout);
    }
}
