use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;
use torsor_cli::format;
use torsor_cli::report::{Report, Status};

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example(name: &str) -> String {
    examples().join(name).to_string_lossy().into_owned()
}

fn torsor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torsor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> (Report, i32) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = torsor(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report = Report::from_json(&text).unwrap_or_else(|e| panic!("{e}: {text}"));
    (report, out.status.code().unwrap())
}

fn scratch(name: &str, body: &str) -> String {
    let dir = std::env::temp_dir().join(format!("torsor-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn shipped_examples_print_and_reparse() {
    let mut seen = 0;
    for entry in std::fs::read_dir(examples()).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("wc") {
            continue;
        }
        let text = std::fs::read_to_string(&path).unwrap();
        let parsed = format::parse(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let printed = format::print(&parsed);
        assert_eq!(format::parse(&printed).unwrap(), parsed, "{}", path.display());
        let out = torsor(&["print", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(format::parse(&String::from_utf8(out.stdout).unwrap()).unwrap(), parsed);
        seen += 1;
    }
    assert!(seen >= 9);
}

#[test]
fn worked_model_has_a_nontrivial_class() {
    let (r, code) = json(&["class", &example("nontrivial-class.wc")]);
    assert_eq!(code, 0);
    assert_eq!(r.results["h1"], serde_json::json!([2]));
    assert_eq!(r.results["class"], serde_json::json!([1]));
    assert_eq!(r.results["nontrivial"], Value::Bool(true));

    let (r, code) = json(&["twist", &example("twist.wc")]);
    assert_eq!(code, 0);
    assert_eq!(r.results["fixed_point"], Value::Null);
    assert_eq!(r.results["trivial"], Value::Bool(false));
}

#[test]
fn fixed_point_model_is_trivial() {
    let (r, code) = json(&["class", &example("fixed-point.wc")]);
    assert_eq!(code, 0);
    assert_eq!(r.results["nontrivial"], Value::Bool(false));
}

#[test]
fn verify_passes_on_examples() {
    for name in ["nontrivial-class.wc", "fixed-point.wc", "disconnected.wc"] {
        let (r, code) = json(&["verify", &example(name)]);
        assert_eq!((r.status, code), (Status::Pass, 0), "{name}: {:?}", r.failure);
    }
    let (r, code) = json(&["descend", &example("disconnected.wc")]);
    assert_eq!((r.status, code), (Status::Pass, 0), "{:?}", r.failure);
}

#[test]
fn h1_agrees_with_the_oracle_on_examples() {
    for name in ["nontrivial-class.wc", "tabulated.wc", "klein.wc", "symmetric3.wc"] {
        let (r, code) = json(&["h1", &example(name)]);
        assert_eq!(code, 0, "{name}");
        if let Some(oracle) = r.results.get("oracle").filter(|o| !o.is_null()) {
            assert_eq!(&r.results["invariant_factors"], oracle, "{name}");
        }
    }
}

#[test]
fn parse_errors_report_line_and_column() {
    let path = scratch("bad.wc", "[group]\nkind = cyclic\norder = 2\n[module M]\nrank = x\n");
    let out = torsor(&["h1", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("5:8"), "{err}");
}

#[test]
fn invalid_modules_are_rejected() {
    // The generator of order 2 acting by a matrix of order 3.
    let path = scratch(
        "order.wc",
        "[group]\nkind = cyclic\norder = 2\n[module M]\nrank = 2\nrelations =\naction = 0 -1; 1 -1\n",
    );
    let out = torsor(&["h1", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn missing_files_exit_with_two() {
    let out = torsor(&["class", "/nonexistent/file.wc"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn parity_and_its_negative_control() {
    let (r, code) = json(&["parity", "--d", "-4"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["p"]["forced_zero"], Value::Bool(true));
    assert_eq!(r.results["p"]["certificate"]["verified"], Value::Bool(true));

    let (r, code) = json(&["parity", "--d", "3", "--drop-canonical"]);
    assert_eq!(code, 0);
    assert_eq!(r.results["quotient"], serde_json::json!([5]));
    assert_eq!(r.results["p"]["forced_zero"], Value::Bool(false));
}

#[test]
fn lang_on_the_shipped_curve() {
    let (r, code) = json(&["lang", &example("curve.wc")]);
    assert_eq!((r.status, code), (Status::Pass, 0));
    let (r, code) = json(&["lang", "--p", "5", "--n", "2", "--sweep"]);
    assert_eq!((r.status, code), (Status::Pass, 0), "{:?}", r.failure);
}

#[test]
fn json_reports_round_trip() {
    let out = torsor(&["--json", "verify", "--random", "5", "--seed", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let r = Report::from_json(&text).unwrap();
    assert_eq!(r.seed, Some(3));
    assert_eq!(r.command, "verify");
    assert_eq!(Report::from_json(&r.to_json()).unwrap(), r);
}
