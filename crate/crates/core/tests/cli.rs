use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture() -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/synthetic_log.jsonl")
        .display()
        .to_string()
}

fn relbell(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_relbell"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn run_on_fixture() {
    let out = relbell(&["run", "--input", &fixture()]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stderr(&out).contains("pairs tested: 78"));
    assert!(stderr(&out).contains("violations found: 0"));
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pairs"].as_array().unwrap().len(), 78);
    assert!(report["oracle"].is_null());
}

#[test]
fn run_with_oracle_reports_one_violation() {
    let out = relbell(&["run", "--input", &fixture(), "--oracle", "--threads", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let err = stderr(&out);
    assert!(err.contains("violations found: 1"), "{err}");
    assert!(err.contains("statistic 2.82843, violated true"), "{err}");
}

#[test]
fn run_case_filter_and_csv_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let out = relbell(&[
        "run",
        "--input",
        &fixture(),
        "--case",
        "1",
        "--forms",
        "chsh_trace",
        "--format",
        "csv",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text
        .starts_with("section,case,queries,first_doc,second_doc,form,dimensions,quantity,value"));
    assert!(text.contains("bell,I,"));
    assert!(!text.contains("bell,II,"));
    assert!(!text.contains("chsh_probability"));
    assert!(stderr(&out).contains("pairs tested: 12"));
}

#[test]
fn missing_input_names_the_path() {
    let out = relbell(&["run", "--input", "/no/such/log.jsonl"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("/no/such/log.jsonl"));
}

#[test]
fn bad_arguments_exit_with_input_error() {
    assert_eq!(relbell(&["run"]).status.code(), Some(1));
    let out = relbell(&["run", "--input", &fixture(), "--case", "4"]);
    assert_eq!(out.status.code(), Some(1));
    let out = relbell(&["run", "--input", &fixture(), "--standard", "colour"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(relbell(&["--help"]).status.code(), Some(0));
}

#[test]
fn order_effects_text_and_json() {
    let args = [
        "order-effects",
        "--input",
        &fixture(),
        "--doc",
        "doc-worked",
    ];
    let out = relbell(
        &[
            &args[..],
            &["--first", "topicality", "--second", "reliability"],
        ]
        .concat(),
    );
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = stdout(&out);
    assert!(
        text.contains("q25\tdoc-worked\t0.0399\t0.3015\t7.55"),
        "{text}"
    );

    let out = relbell(
        &[
            &args[..],
            &[
                "--first",
                "topicality",
                "--second",
                "reliability",
                "--format",
                "json",
            ],
        ]
        .concat(),
    );
    let rows: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows[0]["query_id"], "q25");
    assert!((rows[0]["ratio"].as_f64().unwrap() - 7.553).abs() < 1e-3);
}

#[test]
fn schmidt_variants() {
    let out = relbell(&["schmidt", "--oracle"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(0.70711, 0.70711), rank 2"));
    assert!(stdout(&out).contains("entangled"));

    let out = relbell(&["schmidt", "--state", "0.8,0,0,-0.6"]);
    assert!(
        stdout(&out).contains("(0.80000, 0.60000), rank 2"),
        "{}",
        stdout(&out)
    );

    let out = relbell(&["schmidt", "--state", "1,0,0"]);
    assert_eq!(out.status.code(), Some(1));

    let out = relbell(&[
        "schmidt",
        "--input",
        &fixture(),
        "--pair",
        "shared-a,shared-b",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let r: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(r["separable"], true);
    assert_eq!(r["schmidt"]["rank"], 1);
}

#[test]
fn oracle_subcommand_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("oracle.json");
    let out = relbell(&["oracle", "--output", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!((v["chsh"]["statistic"].as_f64().unwrap() - 2.0 * 2f64.sqrt()).abs() < 1e-9);
    assert_eq!(v["chsh"]["violated"], true);
}
