//! Command-line front end. `run` does all the work and returns the exit code and both output
//! streams, so the binary is a thin wrapper and tests can call it in-process.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand};

use crate::algebra::{
    builtin, check_axioms, metric_report, parse_table, Identity, MultiplicationTable, BUILTINS,
};
use crate::classify::{compare_signatures, theta_of_table, Signature, Verdict, COMPARE_TOL};
use crate::error::Error;
use crate::numerics::{RMatrix8, DEFAULT_TOL, DIM};
use crate::report::{fixed, format_matrix, Report};
use crate::spinor::{
    clifford_diagnostic, standard_operators, BasisChange, ConnectingOperators, MetricSpinTensor,
};
use crate::stabilizer::{identity_constraints, stabilizer_of, theta_constraints, ConstraintSystem};
use crate::theta::reconstruct_constants;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_CONSISTENCY: i32 = 2;
pub const EXIT_NOT_ISOMORPHIC: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "spintheta",
    version,
    about = "Classify 8-dimensional hypercomplex algebras by the spectrum of their controlling spin-tensor"
)]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Args, Debug)]
struct InputArgs {
    /// Table file: `#` comments, then 8 rows of 8 entries `0` or `[+-]e0..e7`
    #[arg(value_name = "FILE")]
    files: Vec<PathBuf>,
    /// Built-in table (see `spintheta --help`)
    #[arg(long = "builtin", value_name = "NAME")]
    builtins: Vec<String>,
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Tolerance override: spectrum comparison for `classify`, construction checks otherwise
    #[arg(long, value_name = "TOL")]
    tol: Option<f64>,
    /// Write `key=value` lines to this file
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Sub {
    /// Print the controlling spin-tensor θ
    Theta {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Print the eigenvalues of θ in descending order
    Eigen {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Decide whether two tables have the same signature
    Classify {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Ranks of the automorphism constraints and the stabilizer dimension
    Autdim {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Rebuild the structural constants from θ and report the deviation
    Roundtrip {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Check the polarized identities and the metric
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Seed diagnostics and golden θ for every built-in
    Selftest {
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Input {
    File(PathBuf),
    Builtin(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Theta(Input),
    Eigen(Input),
    Classify(Input, Input),
    Autdim(Input),
    Roundtrip(Input),
    Check(Input),
    Selftest,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Invocation {
    pub command: Command,
    pub tol: Option<f64>,
    pub report: Option<PathBuf>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(code: i32, message: impl std::fmt::Display) -> Self {
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
        }
    }
}

fn builtin_listing() -> String {
    let mut s = String::from("Built-in tables:\n");
    for b in BUILTINS {
        let _ = writeln!(
            s,
            "  {:<24} table {}: {}",
            b.name, b.table_number, b.description
        );
    }
    s
}

/// Parses arguments (including the program name). Help and version requests come back as an
/// `Outcome` with exit code 0; usage errors with exit code 1.
pub fn parse_args<I, T>(args: I) -> Result<Invocation, Outcome>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cmd = Cli::command().after_help(builtin_listing());
    let matches = cmd.try_get_matches_from(args).map_err(|e| {
        let text = e.render().to_string();
        if e.use_stderr() {
            Outcome {
                code: EXIT_INPUT,
                stdout: String::new(),
                stderr: text,
            }
        } else {
            Outcome {
                code: EXIT_OK,
                stdout: text,
                stderr: String::new(),
            }
        }
    })?;
    let cli = Cli::from_arg_matches(&matches).map_err(|e| Outcome::error(EXIT_INPUT, e))?;
    let (_, sub) = matches.subcommand().expect("subcommand is required");

    let (input, common) = match &cli.command {
        Sub::Selftest { common } => {
            return Ok(Invocation {
                command: Command::Selftest,
                tol: common.tol,
                report: common.report.clone(),
            })
        }
        Sub::Theta { input, common }
        | Sub::Eigen { input, common }
        | Sub::Classify { input, common }
        | Sub::Autdim { input, common }
        | Sub::Roundtrip { input, common }
        | Sub::Check { input, common } => (input, common),
    };

    // restore command-line order across positional files and --builtin flags
    let mut ordered: Vec<(usize, Input)> = Vec::new();
    if let Some(idx) = sub.indices_of("files") {
        ordered.extend(idx.zip(input.files.iter().cloned().map(Input::File)));
    }
    if let Some(idx) = sub.indices_of("builtins") {
        ordered.extend(idx.zip(input.builtins.iter().cloned().map(Input::Builtin)));
    }
    ordered.sort_by_key(|(i, _)| *i);
    let mut inputs: Vec<Input> = ordered.into_iter().map(|(_, x)| x).collect();

    let want = if matches!(cli.command, Sub::Classify { .. }) {
        2
    } else {
        1
    };
    if inputs.len() != want {
        return Err(Outcome::error(
            EXIT_INPUT,
            format!("expected {want} input(s), got {}", inputs.len()),
        ));
    }
    let first = inputs.remove(0);
    let command = match cli.command {
        Sub::Theta { .. } => Command::Theta(first),
        Sub::Eigen { .. } => Command::Eigen(first),
        Sub::Classify { .. } => Command::Classify(first, inputs.remove(0)),
        Sub::Autdim { .. } => Command::Autdim(first),
        Sub::Roundtrip { .. } => Command::Roundtrip(first),
        Sub::Check { .. } => Command::Check(first),
        Sub::Selftest { .. } => unreachable!(),
    };
    Ok(Invocation {
        command,
        tol: common.tol,
        report: common.report.clone(),
    })
}

pub fn main_with_args<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(args) {
        Ok(inv) => run(&inv),
        Err(out) => out,
    }
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Done {
    code: i32,
    stdout: String,
    report: Report,
}

pub fn run(inv: &Invocation) -> Outcome {
    match execute(inv) {
        Ok(done) => {
            if let Some(path) = &inv.report {
                if let Err(e) = done.report.write_to(path) {
                    return Outcome::error(
                        EXIT_INPUT,
                        format!("cannot write {}: {e}", path.display()),
                    );
                }
            }
            Outcome {
                code: done.code,
                stdout: done.stdout,
                stderr: String::new(),
            }
        }
        Err(Failure::Lib(e)) => {
            let code = if e.is_consistency_failure() {
                EXIT_CONSISTENCY
            } else {
                EXIT_INPUT
            };
            Outcome::error(code, e)
        }
        Err(Failure::Io(msg)) => Outcome::error(EXIT_INPUT, msg),
    }
}

fn load(input: &Input) -> Result<MultiplicationTable, Failure> {
    match input {
        Input::Builtin(name) => Ok(builtin(name)?),
        Input::File(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_table(&text, &path.display().to_string())?)
        }
    }
}

fn execute(inv: &Invocation) -> Result<Done, Failure> {
    if let Some(t) = inv.tol {
        crate::numerics::check_tol(t)?;
    }
    let tol = inv.tol.unwrap_or(DEFAULT_TOL);
    let ops = standard_operators();
    let mut report = Report::new();
    let mut out = String::new();
    let mut code = EXIT_OK;

    match &inv.command {
        Command::Theta(input) => {
            let table = load(input)?;
            let theta = theta_of_table(&table, &ops, tol)?.real();
            out.push_str(&format_matrix(&theta));
            report.put_matrix("theta", &theta);
        }
        Command::Eigen(input) => {
            let table = load(input)?;
            let sig = Signature::from_theta(&theta_of_table(&table, &ops, tol)?, table.name())?;
            out.push_str(&format_row(&sig.eigenvalues));
            out.push('\n');
            put_signature(&mut report, "", &sig);
        }
        Command::Classify(a, b) => {
            let (ta, tb) = (load(a)?, load(b)?);
            let sa = Signature::from_theta(&theta_of_table(&ta, &ops, DEFAULT_TOL)?, ta.name())?;
            let sb = Signature::from_theta(&theta_of_table(&tb, &ops, DEFAULT_TOL)?, tb.name())?;
            let rep = compare_signatures(sa, sb, inv.tol.unwrap_or(COMPARE_TOL))?;
            for s in [&rep.a, &rep.b] {
                let unital = if s.has_identity {
                    "with identity"
                } else {
                    "no identity"
                };
                let _ = writeln!(
                    out,
                    "{}: {} ({unital})",
                    s.source,
                    format_row(&s.eigenvalues)
                );
            }
            let _ = writeln!(out, "max deviation: {:.3e}", rep.max_deviation);
            let _ = writeln!(out, "verdict: {}", rep.verdict.as_str());
            report.put("verdict", rep.verdict.as_str());
            report.put_f64("max_deviation", rep.max_deviation);
            put_signature(&mut report, "a.", &rep.a);
            put_signature(&mut report, "b.", &rep.b);
            if rep.verdict == Verdict::NotIsomorphic {
                code = EXIT_NOT_ISOMORPHIC;
            }
        }
        Command::Autdim(input) => {
            let table = load(input)?;
            let theta = theta_of_table(&table, &ops, tol)?;
            let identity = if table.has_identity() {
                identity_constraints(&ops)
            } else {
                ConstraintSystem::default()
            };
            let rep = stabilizer_of(identity, theta_constraints(&theta))?;
            for (k, v) in [
                ("rank.identity", rep.rank_identity),
                ("rank.theta", rep.rank_theta),
                ("rank.combined", rep.rank_combined),
                ("dimension", rep.dimension),
            ] {
                let _ = writeln!(out, "{k}={v}");
                report.put(k, v);
            }
            if table.has_identity() {
                list_constraints(&mut out, "identity constraints", &rep.identity);
            } else {
                out.push_str("identity constraints: none (table has no identity)\n");
            }
            list_constraints(&mut out, "theta constraints", &rep.theta);
        }
        Command::Roundtrip(input) => {
            let table = load(input)?;
            let theta = theta_of_table(&table, &ops, tol)?;
            let back = reconstruct_constants(&theta, &ops, tol)?;
            let dev = back.max_abs_diff(&table.structural_constants());
            let _ = writeln!(out, "max deviation: {dev:.3e}");
            report.put_f64("roundtrip.max_deviation", dev);
        }
        Command::Check(input) => {
            let table = load(input)?;
            let axioms = check_axioms(&table);
            let metric = metric_report(&table, tol);
            let ae = axioms.count(Identity::AlternativeElastic);
            let el = axioms.count(Identity::Elastic);
            let _ = writeln!(out, "triples checked: {}", axioms.triples_checked);
            let _ = writeln!(out, "{} violations: {ae}", Identity::AlternativeElastic);
            let _ = writeln!(out, "{} violations: {el}", Identity::Elastic);
            for v in &axioms.violations {
                let (a, b, c) = v.triple;
                let _ = writeln!(
                    out,
                    "  {} at (e{a}, e{b}, e{c}): residual {}",
                    v.identity, v.residual
                );
            }
            let euclidean = metric.is_euclidean(tol);
            let _ = writeln!(out, "metric violations: {}", metric.violations.len());
            for (i, j, r) in &metric.violations {
                let _ = writeln!(out, "  (e{i}, e{j}): non-scalar part {r}");
            }
            let _ = writeln!(
                out,
                "orthonormal basis: {}",
                if euclidean { "yes" } else { "no" }
            );
            report.put("axioms.triples", axioms.triples_checked);
            report.put("axioms.alternative_elastic", ae);
            report.put("axioms.elastic", el);
            report.put("metric.violations", metric.violations.len());
            report.put("metric.orthonormal", euclidean);
        }
        Command::Selftest => {
            let failures = selftest(&ops, &mut out, &mut report);
            let _ = writeln!(
                out,
                "{}",
                if failures == 0 {
                    "all checks passed"
                } else {
                    "selftest FAILED"
                }
            );
            report.put("selftest.failures", failures);
            if failures > 0 {
                code = EXIT_CONSISTENCY;
            }
        }
    }
    Ok(Done {
        code,
        stdout: out,
        report,
    })
}

fn format_row(xs: &[f64; DIM]) -> String {
    xs.iter().map(|&x| fixed(x)).collect::<Vec<_>>().join(" ")
}

fn put_signature(report: &mut Report, prefix: &str, sig: &Signature) {
    for (k, &e) in sig.eigenvalues.iter().enumerate() {
        report.put_f64(format!("{prefix}eigenvalue.{k}"), e);
    }
    report.put(format!("{prefix}has_identity"), sig.has_identity);
}

fn list_constraints(out: &mut String, title: &str, sys: &ConstraintSystem) {
    let _ = writeln!(out, "{title}:");
    for row in &sys.rows {
        let _ = writeln!(out, "  {row}");
    }
}

type Entries = &'static [(usize, usize, f64)];

/// Non-zero entries of the expected θ for each built-in.
const GOLDEN: &[(&str, Entries)] = &[
    ("octonion", &[(0, 0, 2.0)]),
    ("gen-octonion-e1", &[(0, 0, 1.0), (1, 1, 1.0)]),
    (
        "quaternion-analog",
        &[(0, 0, 0.5), (1, 1, 0.5), (4, 4, 0.5), (5, 5, 0.5)],
    ),
    ("carcass", &[(0, 0, 1.0), (7, 7, -1.0)]),
    ("gen-octonion-e4", &[(0, 0, 1.0), (7, 7, 1.0)]),
    (
        "octonion-noncanonical",
        &[(0, 0, 1.0), (0, 1, 1.0), (1, 0, 1.0), (1, 1, 1.0)],
    ),
];

pub fn golden_theta(name: &str) -> Option<RMatrix8> {
    GOLDEN.iter().find(|(n, _)| *n == name).map(|(_, entries)| {
        let mut m = [[0.0; DIM]; DIM];
        for &(a, b, x) in entries.iter() {
            m[a][b] = x;
        }
        m
    })
}

fn selftest(ops: &ConnectingOperators, out: &mut String, report: &mut Report) -> usize {
    let mut failures = 0;
    let mut check = |out: &mut String, key: &str, what: &str, value: f64, limit: f64| {
        let ok = value < limit;
        if !ok {
            failures += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "{status} {what}: {value:.3e} (limit {limit:.0e})");
        report.put_f64(key, value);
    };

    check(
        out,
        "clifford.residual",
        "clifford residual",
        clifford_diagnostic(ops),
        1e-9,
    );
    let eps = BasisChange::standard().transform_metric(&MetricSpinTensor::old_basis());
    let eps_dev = (eps - MetricSpinTensor::new_basis().0).max_abs();
    check(
        out,
        "metric.deviation",
        "metric transform to identity",
        eps_dev,
        1e-12,
    );

    for info in BUILTINS {
        let table = builtin(info.name).expect("built-in tables parse");
        let golden = golden_theta(info.name).expect("every built-in has a golden θ");
        let dev = match theta_of_table(&table, ops, DEFAULT_TOL) {
            Ok(theta) => {
                let th = theta.real();
                (0..DIM)
                    .flat_map(|a| (0..DIM).map(move |b| (a, b)))
                    .map(|(a, b)| (th[a][b] - golden[a][b]).abs())
                    .fold(0.0, f64::max)
            }
            Err(_) => f64::INFINITY,
        };
        check(
            out,
            &format!("golden.{}", info.name),
            &format!("theta {} (table {})", info.name, info.table_number),
            dev,
            1e-9,
        );
    }
    failures
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Invocation, Outcome> {
        parse_args(std::iter::once("spintheta").chain(args.iter().copied()))
    }

    #[test]
    fn input_order_is_preserved() {
        let inv = parse(&["classify", "a.tbl", "--builtin", "octonion"]).unwrap();
        assert_eq!(
            inv.command,
            Command::Classify(
                Input::File("a.tbl".into()),
                Input::Builtin("octonion".into())
            )
        );
        let inv = parse(&["classify", "--builtin", "octonion", "a.tbl"]).unwrap();
        assert_eq!(
            inv.command,
            Command::Classify(
                Input::Builtin("octonion".into()),
                Input::File("a.tbl".into())
            )
        );
    }

    #[test]
    fn input_count_enforced() {
        assert_eq!(
            parse(&["classify", "--builtin", "octonion"])
                .unwrap_err()
                .code,
            EXIT_INPUT
        );
        assert_eq!(parse(&["theta"]).unwrap_err().code, EXIT_INPUT);
        assert_eq!(parse(&["theta", "a", "b"]).unwrap_err().code, EXIT_INPUT);
    }

    #[test]
    fn help_is_success_and_lists_builtins() {
        let out = parse(&["--help"]).unwrap_err();
        assert_eq!(out.code, EXIT_OK);
        assert!(out.stdout.contains("octonion-noncanonical"));
        assert!(out.stdout.contains("table 6"));
    }

    #[test]
    fn options() {
        let inv = parse(&[
            "eigen",
            "--builtin",
            "carcass",
            "--tol",
            "1e-7",
            "--report",
            "r.txt",
        ])
        .unwrap();
        assert_eq!(inv.tol, Some(1e-7));
        assert_eq!(inv.report, Some(PathBuf::from("r.txt")));
    }

    #[test]
    fn bad_tolerance_is_input_error() {
        let out = main_with_args(["spintheta", "theta", "--builtin", "octonion", "--tol", "-1"]);
        assert_eq!(out.code, EXIT_INPUT);
    }

    #[test]
    fn unknown_builtin() {
        let out = main_with_args(["spintheta", "theta", "--builtin", "sedenion"]);
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("sedenion"));
    }

    #[test]
    fn selftest_passes() {
        let out = main_with_args(["spintheta", "selftest"]);
        assert_eq!(out.code, EXIT_OK, "{}", out.stdout);
        assert!(!out.stdout.contains("FAIL"));
    }
}
