use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn repo_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn hochkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hochkit"))
        .args(args)
        .env("HOCHKIT_FIXTURES", repo_fixtures())
        .output()
        .expect("binary runs")
}

fn machine(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "machine"]);
    let out = hochkit(&all);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: stdout={} stderr={}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), json)
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hochkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn verify_hrr_s3_is_a_passing_three_by_three_table() {
    let out = hochkit(&["verify", "hrr", "s3"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("s3: 3×3 pairing of simples"));
    assert!(text.contains("summary: 9 checks, 9 passed, 0 failed"));

    let (code, json) = machine(&["verify", "hrr", "s3"]);
    assert_eq!(code, 0);
    let records = json["records"].as_array().unwrap();
    assert_eq!(records.len(), 9);
    assert!(records.iter().all(|r| r["tag"] == "Thm 7.4 HRR" && r["pass"] == true));
    let table = &json["tables"][0]["rows"];
    for i in 0..3 {
        for j in 0..3 {
            assert_eq!(table[i][j + 1], if i == j { "1" } else { "0" });
        }
    }
}

#[test]
fn hh_of_dual_numbers() {
    let (code, json) = machine(&["hh", "dual", "--max-degree", "4"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["dims"], serde_json::json!([2, 1, 1, 1, 1]));
    assert_eq!(json["data"]["top_incomplete"], false);
    assert_eq!(json["schema_version"], 1);
    assert_eq!(json["config"]["seed"], 1);
}

#[test]
fn hh_degree_cap_is_a_precondition_error() {
    let out = hochkit(&["hh", "dual", "--max-degree", "9999"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("DegreeCapExceeded"), "{}", stderr(&out));
    assert!(out.stdout.is_empty());
}

#[test]
fn size_guard_marks_or_refuses() {
    // degree 3 fits under the guard but degree 4, needed to finish it, does not
    let (code, json) = machine(&["hh", "s3", "--max-degree", "3", "--size-guard", "1000"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["top_incomplete"], true);
    assert_eq!(json["data"]["dims"].as_array().unwrap()[..3], [3, 0, 0]);

    let out = hochkit(&["hh", "s3", "--max-degree", "4", "--size-guard", "1000"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("size guard 1000"), "{}", stderr(&out));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hochkit(&["hh"]).status.code(), Some(2));
    assert_eq!(hochkit(&["hh", "dual", "--size-guard", "0"]).status.code(), Some(2));
    assert_eq!(hochkit(&["verify", "bogus"]).status.code(), Some(2));
    let out = hochkit(&["hh", "nosuchfixture"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("nosuchfixture"));
}

#[test]
fn verify_all_is_deterministic_and_passes() {
    let a = hochkit(&["verify", "all", "--format", "machine", "--seed", "7"]);
    let b = hochkit(&["verify", "all", "--format", "machine", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    let json: Value = serde_json::from_slice(&a.stdout).unwrap();
    let summary = &json["summary"];
    assert_eq!(summary["failed"], 0);
    assert_eq!(summary["total"], summary["passed"]);
    let suites: Vec<&str> = json["records"].as_array().unwrap().iter().map(|r| r["suite"].as_str().unwrap()).collect();
    for s in ["hrr", "cardy", "adjoint", "functorial", "morita", "traces", "chern", "tqft"] {
        assert!(suites.contains(&s), "no records from {s}");
    }
    // records carry theorem tags
    assert!(json["records"].as_array().unwrap().iter().all(|r| !r["tag"].as_str().unwrap().is_empty()));

    let c = hochkit(&["verify", "all", "--format", "machine", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn malformed_scalar_reports_line_and_column() {
    let p = scratch("bad_scalar.alg", "dim = 2\nunit = [1, 0]\nmult 0 0 = [0:z3^]\n");
    let out = hochkit(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("ParseError"), "{err}");
    assert!(err.contains("bad_scalar.alg:3:"), "{err}");
}

#[test]
fn non_associative_file_is_a_validation_error() {
    // (a·a)·a = b·a = a but a·(a·a) = a·b = 0
    let text = "dim = 3\nunit = [1, 0, 0]\nmult 0 0 = [0:1]\nmult 0 1 = [1:1]\nmult 0 2 = [2:1]\n\
                mult 1 0 = [1:1]\nmult 2 0 = [2:1]\nmult 1 1 = [2:1]\nmult 2 1 = [1:1]\n";
    let p = scratch("bad_assoc.alg", text);
    let out = hochkit(&["validate", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("ValidationError") && err.contains("NotAssociative(1, 1, 1)"), "{err}");
}

#[test]
fn fixture_directory_from_environment() {
    let (code, json) = machine(&["hh", "dualnum", "--max-degree", "3"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["dims"], serde_json::json!([2, 1, 1, 1]));

    let (code, json) = machine(&["chern", "z3", "z3_eigen"]);
    assert_eq!(code, 0);
    assert_eq!(json["records"][0]["pass"], true);

    let out = Command::new(env!("CARGO_BIN_EXE_hochkit"))
        .args(["hh", "dualnum"])
        .env("HOCHKIT_FIXTURES", std::env::temp_dir().join("hochkit-no-such-dir"))
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bundled_fixture_validates() {
    let (code, json) = machine(&["validate", "s3"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["dim"], 6);
    assert_eq!(json["data"]["simples"].as_array().unwrap().len(), 3);
    for f in ["dualnum.alg", "z3.alg", "z3_eigen.mod", "dual_point.mod", "z2_swap.bimod", "z2_diagonal.bimod"] {
        let p = repo_fixtures().join(f);
        let (code, json) = machine(&["validate", p.to_str().unwrap()]);
        assert_eq!(code, 0, "{f}");
        assert_eq!(json["data"]["valid"], true);
    }
}

#[test]
fn pushforward_routes_agree() {
    // outer(triv, sign) sends ch(triv) = (e + g)/2 to ch(sign) = (e - g)/2
    let (code, json) = machine(&["pushforward", "z2_swap", "ch(chi0)"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["image"], "[1/2, -1/2]");
    assert_eq!(json["records"][0]["tag"], "Prop 3.1 adjoint transfer");

    let (code, json) = machine(&["pushforward", "outer(s3#std, zn:2#chi1)", "ch(std)"]);
    assert_eq!(code, 0);
    assert_eq!(json["records"][0]["pass"], true);

    // the diagonal bimodule is the identity functor
    let (code, json) = machine(&["pushforward", "z2_diagonal", "[1/3, 2]"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["image"], "[1/3, 2]");
}

#[test]
fn tqft_low_genus_and_reported_higher_genus() {
    let (code, json) = machine(&["tqft", "s3", "--genus", "1"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["dim"], 3);
    assert_eq!(json["records"][0]["pass"], true);

    let (code, json) = machine(&["tqft", "zn:2", "--genus", "0"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["dim"], 1);

    let (code, json) = machine(&["tqft", "zn:2", "--genus", "2"]);
    assert_eq!(code, 0);
    assert!(json["records"].as_array().unwrap().is_empty());
    assert_eq!(json["tables"][0]["rows"][0][2], "8");

    assert_eq!(hochkit(&["tqft", "dual", "--genus", "1"]).status.code(), Some(2));
}

#[test]
fn center_chern_iota_pairing() {
    let (_, json) = machine(&["center", "s3"]);
    assert_eq!(json["data"]["center_dim"], 3);
    assert_eq!(json["data"]["hh0_dim"], 3);

    let (code, json) = machine(&["chern", "s3", "std"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["ch"], "[1/3, 0, -1/6, 0, 0, -1/6]");

    let (code, json) = machine(&["iota", "s3", "std", "--endo", "[[2, 0], [0, 2]]"]);
    assert_eq!(code, 0);
    assert_eq!(json["data"]["iota"], "[2/3, 0, -1/3, 0, 0, -1/3]");

    let (_, json) = machine(&["pairing", "s3", "ch(std)", "ch(std)"]);
    assert_eq!(json["data"]["value"], "1");
    let (_, json) = machine(&["pairing", "s3", "ch(triv)", "ch(std + sign)"]);
    assert_eq!(json["data"]["value"], "0");
}
