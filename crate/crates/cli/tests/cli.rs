use std::process::{Command, Output};

use hpgforge::json::{check_schema, transformation_from_json, triple_from_json};
use hpgforge::numeric::series::verify_identity_auto;
use hpgforge::triple::verify_triple;
use serde_json::Value;

fn hpgforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hpgforge")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn json_round_trip_reverifies() {
    for (family, element) in [("e1", "2+1i"), ("e1", "3"), ("e2", "2-1w"), ("e3", "2+1w"), ("e3", "3")] {
        let out = hpgforge(&["gen", "--family", family, "--element", element, "--format", "json"]);
        assert_eq!(out.status.code(), Some(0), "{family} {element}");
        let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
        check_schema(&doc).unwrap();
        let t = triple_from_json(&doc["triple"]).unwrap();
        assert!(verify_triple(&t), "{family} {element}");
        let tr = transformation_from_json(&doc["transformation"]).unwrap();
        assert!(verify_identity_auto(&tr, 30).unwrap().passes(1e-20), "{family} {element}");
    }
}

#[test]
fn latex_has_the_printed_triple() {
    let out = hpgforge(&["gen", "--family", "e1", "--element", "2+1i", "--format", "latex"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("P &= -iz + (2+i)"));
    assert!(text.contains("R &= z^{2} + (2-8i)z + 1"));
}

#[test]
fn no_gaussian_norm_21() {
    let out = hpgforge(&["norms", "--degree", "21", "--ring", "gauss"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "no transformation of degree 21\n");
    let out = hpgforge(&["norms", "--degree", "21", "--ring", "gauss", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["elements"], serde_json::json!([]));
    let out = hpgforge(&["norms", "--degree", "21", "--ring", "eisenstein"]);
    assert_eq!(stdout(&out), "5+1*w\n5+4*w\n");
}

#[test]
fn verify_reports_all_pass() {
    let out = hpgforge(&["verify", "--family", "e2", "--max-norm", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("31/31 triples verified\n"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| hpgforge(args).status.code();
    assert_eq!(code(&["gen", "--family", "e1", "--element", "2+x"]), Some(2));
    assert_eq!(code(&["gen", "--family", "e7", "--element", "2"]), Some(2));
    assert_eq!(code(&["gen", "--family", "e1", "--element", "0"]), Some(2));
    assert_eq!(code(&["gen", "--family", "e1"]), Some(2));
    assert_eq!(code(&["verify", "--format", "latex"]), Some(2));
    assert_eq!(code(&["numeric-check", "--family", "e1", "--element", "2", "--points", "1/0"]), Some(2));
    assert_eq!(code(&["selftest", "--only", "11"]), Some(2));
    assert_eq!(code(&["ramify"]), Some(2));
    assert_eq!(code(&["selftest", "--only", "1,8"]), Some(0));
    // a tolerance no series can meet is a verification failure, not a usage error
    assert_eq!(code(&["numeric-check", "--family", "e1", "--element", "1+1i", "--prec", "10", "--tol", "1e-300"]), Some(1));
    let err = hpgforge(&["gen", "--family", "e1", "--element", "2+x"]);
    assert!(err.stdout.is_empty() && !err.stderr.is_empty());
}

#[test]
fn numeric_check_points_and_cross() {
    let out = hpgforge(&["numeric-check", "--family", "e3", "--element", "2+1w", "--points", "0.01,1/50"]);
    assert_eq!(out.status.code(), Some(0));
    let out = hpgforge(&["numeric-check", "--cross", "hyper-to-e2", "--element", "2+w", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["result"]["records"][0]["degree"], 6);
    assert!(doc["result"]["max_rel_err"].as_f64().unwrap() < 1e-20);
}

#[test]
fn ramify_names_the_row() {
    let out = hpgforge(&["ramify", "--family", "e3", "--element", "3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "e3 3+0*w degree 9: 2*3+3*1 = 3*3 = 3*3\nhurwitz ok\ntable row e3-3n\n");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["gen", "--family", "e2", "--element", "3+1w", "--format", "json"][..],
        &["oracle-check", "--max-norm", "9", "--format", "json"],
        &["numeric-check", "--family", "e1", "--max-norm", "5"],
    ] {
        let a = hpgforge(args);
        let mut seq = vec!["--sequential"];
        seq.extend_from_slice(args);
        let b = hpgforge(&seq);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.stdout, hpgforge(args).stdout);
    }
}
