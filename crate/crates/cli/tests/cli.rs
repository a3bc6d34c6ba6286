use std::process::{Command, Output};

use serde_json::{json, Value};
use tetrafarey::lambda::verify_tetra_ptolemy;
use tetrafarey::paths::normalise_path;
use tetrafarey::tilings::{tiling_from_paths, TilingMode};
use tetrafarey::{EInt, ProjPoint};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tetrafarey")).args(args).output().expect("binary runs")
}

fn json_of(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&o.stdout)))
}

const INF: &str = r#"{"p":[1,0],"q":[0,0]}"#;

fn standard_tetra() -> String {
    r#"[{"p":[1,0],"q":[0,0]},{"p":[0,0],"q":[1,0]},{"p":[1,0],"q":[1,0]},{"p":[0,1],"q":[1,0]}]"#.into()
}

#[test]
fn tiling_from_normalised_paths_matches_library() {
    let inf = ProjPoint::infinity();
    let us = [inf.clone(), ProjPoint::int(0, 0), ProjPoint::int(1, 0), ProjPoint::int(0, 1)];
    let vs = [ProjPoint::int(0, 0), ProjPoint::int(-1, 1), ProjPoint::int(-1, 0), inf.clone()];
    let u = normalise_path(&us, &inf).unwrap();
    let v = normalise_path(&vs, &ProjPoint::new(EInt::zero(), -EInt::sigma().conj()).unwrap()).unwrap();
    let (uj, vj) = (serde_json::to_string(&u).unwrap(), serde_json::to_string(&v).unwrap());
    let o = run(&["tile", "from-paths", "--u", &uj, "--v", &vj, "--mode", "scalar"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json_of(&o);
    let expected = tiling_from_paths(&u, &v, TilingMode::Scalar, None).unwrap();
    assert_eq!(out["result"]["entries"], serde_json::to_value(&expected.entries).unwrap());
    assert_eq!(out["result"]["entries"][0], json!([[0, 0], [0, 1], [-1, 0], [-1, 0]]));

    let w = serde_json::to_string(&out["result"]).unwrap();
    let c = run(&["tile", "check", "--window", &w]);
    assert_eq!(c.status.code(), Some(0));
    assert_eq!(json_of(&c)["pass"], json!(true));
}

#[test]
fn ptolemy_pinned_example() {
    let o = run(&["verify", "ptolemy-tetra", "--tetra", &standard_tetra(), "--x", r#"{"p":[2,0],"q":[1,0]}"#]);
    assert_eq!(o.status.code(), Some(0));
    let out = json_of(&o);
    assert_eq!(out["schema"], json!(1));
    assert_eq!(out["residual"], json!("exact-zero"));
    assert_eq!(out["result"]["lhs"], json!(27));
    assert_eq!(out["result"]["rhs"], json!(27));
}

#[test]
fn verify_agrees_with_library_call() {
    let t = serde_json::from_str(&standard_tetra()).unwrap();
    let x = ProjPoint::new(EInt::new(3, 1), EInt::new(2, -1)).unwrap();
    let lib = verify_tetra_ptolemy(&t, &x).unwrap();
    let xj = serde_json::to_string(&x).unwrap();
    let out = json_of(&run(&["verify", "ptolemy-tetra", "--tetra", &standard_tetra(), "--x", &xj]));
    assert_eq!(out["pass"], json!(lib.equal));
    assert_eq!(out["result"]["lhs"], serde_json::to_value(tetrafarey::eisenstein::JsonBig(&lib.lhs)).unwrap());
}

#[test]
fn batches_are_deterministic_and_pass() {
    for cmd in ["ptolemy-tetra", "five-point", "soddy", "lambda-det", "b-seq"] {
        let args = ["verify", cmd, "--samples", "20", "--seed", "7", "--json-indent", "0"];
        let (a, b) = (run(&args), run(&args));
        assert_eq!(a.stdout, b.stdout, "{cmd} output depends on more than the seed");
        assert_eq!(a.status.code(), Some(0), "{cmd}: {}", String::from_utf8_lossy(&a.stdout));
    }
}

#[test]
fn period_four_enumeration() {
    let o = run(&["frieze", "enumerate", "--period", "4"]);
    assert_eq!(o.status.code(), Some(0));
    let out = json_of(&o);
    assert_eq!(out["result"]["class_count"], json!(3));
    assert_eq!(out["result"]["raw_count"], json!(30));
    assert!(out.get("timing_ms").is_none());
    let t = json_of(&run(&["--timing", "frieze", "enumerate", "--period", "4"]));
    assert!(t["timing_ms"].is_number());
}

#[test]
fn malformed_json_is_a_usage_error() {
    let o = run(&["graph", "edge", "{\"p\":[1,0],\n\"q\":[0,", INF]);
    assert_eq!(o.status.code(), Some(2));
    let out = json_of(&o);
    assert_eq!(out["pass"], json!(false));
    assert_eq!(out["error"]["line"], json!(2));
    assert!(out["error"]["column"].is_number());
}

#[test]
fn unknown_subcommand_is_a_usage_error() {
    assert_eq!(run(&["graph", "nope"]).status.code(), Some(2));
}

#[test]
fn failing_check_exits_one() {
    let w = r#"{"row_offset":0,"col_offset":0,"entries":[[[1,0],[1,0]],[[1,0],[1,0]]]}"#;
    let o = run(&["tile", "check", "--window", w]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!json_of(&o)["witnesses"].as_array().unwrap().is_empty());
}

#[test]
fn compact_output_is_one_line() {
    let o = run(&["graph", "edge", INF, r#"{"p":[0,0],"q":[1,0]}"#, "--json-indent", "0"]);
    let s = String::from_utf8(o.stdout).unwrap();
    assert_eq!(s.lines().count(), 1);
    assert_eq!(serde_json::from_str::<Value>(&s).unwrap()["result"]["is_edge"], json!(true));
}
