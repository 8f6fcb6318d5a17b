use std::process::{Command, Output};

use compjac::algebra::UnivariatePolynomial;
use compjac::dyck::poincare;
use compjac::invariant::{admissible_subsets, CurveParams, InvariantSubset};
use num_bigint::BigInt;
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compjac"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_with_threads(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_compjac"))
        .args(args)
        .env("COMPJAC_THREADS", threads)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

#[test]
fn poincare_golden() {
    assert_eq!(
        ok(&["poincare", "-n", "2", "-m", "3", "-d", "2"]),
        "1+t+2t^2+3t^3+4t^4+4t^5+4t^6+3t^7+t^8\n"
    );
    assert_eq!(
        ok(&[
            "poincare",
            "-n",
            "2",
            "-m",
            "3",
            "-d",
            "2",
            "--cohomological"
        ]),
        "1+t^2+2t^4+3t^6+4t^8+4t^10+4t^12+3t^14+t^16\n"
    );
}

#[test]
fn count_trivial() {
    assert_eq!(ok(&["count", "-a", "1", "-b", "1"]), "1\n");
    assert_eq!(ok(&["count", "-a", "4", "-b", "6"]), "23\n");
}

#[test]
fn admissible_table() {
    let text = ok(&["admissible", "-n", "2", "-m", "3", "-d", "2"]);
    let rows: Vec<&str> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 23);
    let mut histogram = [0; 9];
    for row in rows {
        histogram[row.split('\t').next().unwrap().parse::<usize>().unwrap()] += 1;
    }
    assert_eq!(histogram, [1, 1, 2, 3, 4, 4, 4, 3, 1]);
    assert_eq!(
        ok(&["admissible", "-n", "2", "-m", "3", "-d", "2", "-s", "3"])
            .lines()
            .count(),
        28
    );
    assert_eq!(
        ok(&["admissible", "-n", "1", "-m", "1", "-d", "1"]),
        "dim\tgens\tgaps\n0\t0\t\n"
    );
}

#[test]
fn admissible_json_round_trip() {
    let json: Value = serde_json::from_str(&ok(&[
        "admissible",
        "-n",
        "1",
        "-m",
        "2",
        "-d",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    let parsed: Vec<InvariantSubset> = json
        .as_array()
        .unwrap()
        .iter()
        .map(|r| serde_json::from_value(r["subset"].clone()).unwrap())
        .collect();
    let expected = admissible_subsets(CurveParams::new(1, 2, 3, 1).unwrap(), None).unwrap();
    assert_eq!(parsed, expected);
    for (row, x) in json.as_array().unwrap().iter().zip(&expected) {
        assert_eq!(row["dim"].as_u64(), Some(x.dim()));
    }
}

#[test]
fn poincare_json_round_trip() {
    let json: Value = serde_json::from_str(&ok(&[
        "poincare", "-n", "2", "-m", "3", "-d", "2", "--format", "json",
    ]))
    .unwrap();
    let p: UnivariatePolynomial<BigInt> =
        serde_json::from_value(json["polynomial"].clone()).unwrap();
    assert_eq!(p, poincare(2, 3, 2, false).unwrap());
}

#[test]
fn csv_and_latex() {
    let csv = ok(&[
        "poincare", "-n", "2", "-m", "3", "-d", "2", "--format", "csv",
    ]);
    assert!(csv.starts_with("degree,coefficient\n0,1\n1,1\n2,2\n"));
    let latex = ok(&[
        "admissible",
        "-n",
        "2",
        "-m",
        "3",
        "-d",
        "2",
        "--format",
        "latex",
    ]);
    assert!(latex.starts_with("\\begin{tabular}"));
    assert!(latex.contains("8 & 1 &"));
    assert_eq!(
        ok(&["poincare", "-n", "2", "-m", "3", "-d", "1", "--format", "latex"]),
        "$1+t$\n"
    );
}

#[test]
fn invalid_arguments_exit_2() {
    for args in [
        vec!["count", "-a", "1"],
        vec!["poincare", "-n", "2", "-m", "4"],
        vec!["poincare", "-n", "0", "-m", "1"],
        vec!["piontkowski", "-n", "2", "-m", "3", "-s", "2"],
        vec!["piontkowski", "-n", "4", "-m", "5", "-s", "1"],
        vec!["cabled-count", "-n", "2", "-m", "3", "-d", "2", "-s", "2"],
        vec!["verify", "--suite", "nope"],
        vec![
            "verify", "--suite", "identity", "-n", "3", "-m", "1", "-d", "3",
        ],
        vec![
            "classes", "-n", "2", "-m", "3", "-d", "2", "--gens", "1,2,3,4",
        ],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn bound_instability_exits_1() {
    let out = run(&[
        "admissible",
        "-n",
        "2",
        "-m",
        "3",
        "-d",
        "2",
        "--bound",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not bound-stable"));
}

#[test]
fn output_is_deterministic_across_threads() {
    let args = [
        "admissible",
        "-n",
        "2",
        "-m",
        "3",
        "-d",
        "2",
        "-s",
        "3",
        "--format",
        "json",
    ];
    let one = run_with_threads(&args, "1");
    let four = run_with_threads(&args, "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let qt = ["qt-catalan", "-a", "6", "-b", "8"];
    assert_eq!(
        run_with_threads(&qt, "1").stdout,
        run_with_threads(&qt, "3").stdout
    );
}

#[test]
fn verify_all_passes() {
    let out = run(&[
        "verify",
        "--suite",
        "all",
        "--max-size",
        "36",
        "--seed",
        "7",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let json: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(json["pass"], Value::Bool(true));
    assert_eq!(json["suites"].as_array().unwrap().len(), 13);
    assert_eq!(
        run(&[
            "verify",
            "--suite",
            "all",
            "--max-size",
            "36",
            "--seed",
            "7"
        ])
        .stdout,
        out.stdout
    );
}

#[test]
fn verify_identity_report() {
    let json: Value = serde_json::from_str(&ok(&[
        "verify", "--suite", "identity", "-n", "2", "-m", "3", "-d", "2",
    ]))
    .unwrap();
    for key in ["identity", "params", "points", "lhs", "rhs", "pass"] {
        assert!(json.get(key).is_some(), "{key}");
    }
    assert_eq!(json["pass"], Value::Bool(true));
    assert_eq!(json["points"].as_array().unwrap().len(), 5);
    assert_eq!(json["lhs"], json["rhs"]);
}

#[test]
fn classes_of_one_subset() {
    let json: Value = serde_json::from_str(&ok(&[
        "classes",
        "-n",
        "2",
        "-m",
        "3",
        "-d",
        "2",
        "--gens",
        "0,13,2,15",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(json["admissible"], Value::Bool(false));
    let normal: InvariantSubset = serde_json::from_value(json["normalized"].clone()).unwrap();
    assert!(normal.is_admissible());
    assert_eq!(json["path"].as_array().unwrap().len(), 2);
}

#[test]
fn class_list_has_one_row_per_path() {
    let text = ok(&["classes", "-n", "2", "-m", "3", "-d", "2"]);
    assert_eq!(text.lines().count(), 24);
}

#[test]
fn cabled_count_and_closed_form() {
    assert_eq!(
        ok(&["cabled-count", "-n", "2", "-m", "3", "-d", "2", "-s", "3"]),
        "27\n"
    );
    assert_eq!(
        ok(&["cabled-count", "-n", "3", "-m", "4", "-d", "2", "-s", "1"]),
        "227\n"
    );
    assert_eq!(
        ok(&["piontkowski", "-n", "3", "-m", "5", "-s", "1"]),
        "525\n"
    );
    let json: Value = serde_json::from_str(&ok(&[
        "cabled-count",
        "-n",
        "2",
        "-m",
        "3",
        "-d",
        "2",
        "-s",
        "3",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(json["patterns"].as_array().unwrap().len(), 2);
}

#[test]
fn bizley_rows() {
    let json: Value = serde_json::from_str(&ok(&[
        "bizley", "-n", "2", "-m", "3", "-d", "2", "--format", "json",
    ]))
    .unwrap();
    let rows = json["rows"].as_array().unwrap();
    assert_eq!(rows[1]["series_coefficient"], "23");
    assert_eq!(rows[1]["path_count"], "23");
}

#[test]
fn writes_to_out_file() {
    let dir = std::env::temp_dir().join(format!("compjac-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("p.txt");
    let out = run(&[
        "poincare",
        "-n",
        "2",
        "-m",
        "3",
        "-d",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "1+t+2t^2+3t^3+4t^4+4t^5+4t^6+3t^7+t^8\n"
    );
    std::fs::remove_dir_all(dir).unwrap();
}
