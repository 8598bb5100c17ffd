//! The binary: exit codes, precision precedence, output formats.

use std::process::{Command, Output};

use catalan_forms::arith::parse_rat;
use catalan_forms::linear_forms::tilde_un_vn;
use serde_json::Value;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_catalan-forms"));
    c.env_remove("CATALAN_FORMS_PRECISION_BITS");
    c
}

fn run(c: &mut Command) -> (i32, String, String) {
    let Output {
        status,
        stdout,
        stderr,
    } = c.output().expect("binary runs");
    (
        status.code().unwrap_or(-1),
        String::from_utf8(stdout).unwrap(),
        String::from_utf8(stderr).unwrap(),
    )
}

fn json(out: &str) -> Value {
    serde_json::from_str(out).expect("valid JSON")
}

#[test]
fn forms_json_round_trips_exactly() {
    let (code, out, _) = run(bin().args(["forms", "--n-range", "0..12"]));
    assert_eq!(code, 0);
    let v = json(&out);
    for row in v["rows"].as_array().unwrap() {
        let n = row["n"].as_u64().unwrap();
        let f = tilde_un_vn(n).unwrap();
        assert_eq!(parse_rat(row["u"].as_str().unwrap()).unwrap(), f.u, "n={n}");
        assert_eq!(parse_rat(row["v"].as_str().unwrap()).unwrap(), f.v, "n={n}");
    }
}

#[test]
fn env_precision_and_flag_precedence() {
    let (code, out, _) = run(bin()
        .args(["group", "order"])
        .env("CATALAN_FORMS_PRECISION_BITS", "300"));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["config"]["precision_bits"], 300);
    let (code, _, err) = run(bin()
        .args(["group", "order"])
        .env("CATALAN_FORMS_PRECISION_BITS", "32"));
    assert_eq!(code, 64, "{err}");
    let (code, out, _) = run(bin()
        .args(["group", "order", "--precision-bits", "128"])
        .env("CATALAN_FORMS_PRECISION_BITS", "32"));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["config"]["precision_bits"], 128);
}

#[test]
fn exit_codes() {
    assert_eq!(run(bin().args(["forms", "--n-range", "4..2"])).0, 64);
    assert_eq!(run(bin().args(["forms", "--format", "xml"])).0, 64);
    assert_eq!(run(bin().args(["reference-g", "--digits", "200"])).0, 3);
    // the exponents never exceed 4n + ⌈log₂ 2n⌉, so even zero slack passes
    let (code, out, _) = run(bin().args(["forms", "--n-range", "0..40", "--slack-budget", "0"]));
    assert_eq!(code, 0);
    assert_eq!(json(&out)["summary"]["failures"], 0);
}

#[test]
fn output_is_deterministic() {
    let a = run(bin().args(["group", "orbit", "--format", "csv"]));
    let b = run(bin().args(["group", "orbit", "--format", "csv"]));
    assert_eq!(a, b);
    assert!(a.1.lines().next().unwrap().starts_with("c.00,"));
}

#[test]
fn orbit_contains_h_image() {
    let (code, out, _) = run(bin().args(["group", "orbit", "--c", "1/2,1/2,1,1/2,1"]));
    assert_eq!(code, 0);
    let v = json(&out);
    let base = &v["summary"]["c"];
    let swapped = v["rows"]
        .as_array()
        .unwrap()
        .iter()
        .any(|r| r["c"]["00"] == base["22"] && r["c"]["22"] == base["00"] && r["word"] == "h");
    assert!(swapped);
}

#[test]
fn probe_reports_euler_relation() {
    let (code, out, _) = run(bin().args(["group", "probe"]));
    assert_eq!(code, 0);
    let v = json(&out);
    let row = &v["rows"][0];
    assert_eq!(row["name"], "euler n=1");
    assert_eq!(
        (row["relation"]["p"].as_str(), row["relation"]["q"].as_str()),
        (Some("12"), Some("-10"))
    );
    assert_eq!(row["divides"], true);
}

#[test]
fn conjecture_small_n() {
    let (code, out, _) = run(bin().args(["conjecture", "--n-range", "0..60", "--format", "text"]));
    assert_eq!(code, 0, "{out}");
    assert!(out.starts_with("conjecture [pass]"));
}
