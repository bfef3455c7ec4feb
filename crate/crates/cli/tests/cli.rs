//! Black-box tests of the `cy-smoother` binary.

use std::path::PathBuf;
use std::process::{Command, Output};

use cy_smoother_core::DegenerationSpec;
use serde_json::Value;

fn examples() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples")
}

fn example(name: &str) -> String {
    examples().join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cy-smoother")).env_remove("CY_SMOOTHER_CATALOG").args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn smooth_quick_json() {
    let v = json(&run(&["smooth", &example("quick.json")]));
    assert_eq!(v["invariants"]["picard_rank"], 1);
    assert_eq!(v["invariants"]["hodge"]["euler"], -296);
    assert_eq!(v["torsion_note"], "all results modulo torsion");
}

#[test]
fn output_is_deterministic() {
    for args in [vec!["--format", "table", "smooth"], vec!["fano", "search"], vec!["fano", "groups", "--include-all"]] {
        let mut a = args.clone();
        if a.contains(&"smooth") {
            a.push("PLACEHOLDER");
        }
        let quick = example("triple_nu.json");
        let a: Vec<&str> = a.iter().map(|s| if *s == "PLACEHOLDER" { quick.as_str() } else { s }).collect();
        let first = run(&a);
        assert!(first.status.success());
        assert_eq!(first.stdout, run(&a).stdout);
    }
}

#[test]
fn move_top_output_round_trips() {
    let out = run(&["move-top", "--from", "2", &example("pair1_a.json")]);
    let text = String::from_utf8(json(&out).to_string().into_bytes()).unwrap();
    let spec = DegenerationSpec::parse(&text).unwrap();
    assert!(spec.y2.centers.is_empty());
    assert_eq!(spec.y1.centers.len(), 2);

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("moved.json");
    std::fs::write(&path, &text).unwrap();
    let moved = json(&run(&["smooth", path.to_str().unwrap()]));
    let b = json(&run(&["smooth", &example("pair1_b.json")]));
    for key in ["cubic_form", "c2_form", "hodge"] {
        assert_eq!(moved["invariants"][key], b["invariants"][key], "{key}");
    }
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"k3\": ").unwrap();
    assert_eq!(run(&["smooth", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(run(&["smooth", "/nonexistent/x.json"]).status.code(), Some(2));
    assert_eq!(run(&["fano", "cy", "--v1", "P3", "--v2", "nope"]).status.code(), Some(2));
    assert_eq!(run(&["fano", "cy", "--v1", "P3", "--v2", "Q"]).status.code(), Some(2));
    assert_eq!(run(&["invariants", "cubic", "--file", &example("pair1_cubic.json")]).status.code(), Some(2));
    assert_eq!(run(&["move-top", "--from", "1", &example("quick.json")]).status.code(), Some(2));

    // Not d-semistable: both sides bare.
    let spec = std::fs::read_to_string(example("quick.json")).unwrap().replace("[[8]]", "[]");
    let p = dir.path().join("bare.json");
    std::fs::write(&p, spec).unwrap();
    let out = run(&["smooth", p.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.get("invariants").is_none());
    assert!(String::from_utf8_lossy(&out.stderr).contains("d-semistability"));
}

#[test]
fn rr_handles_negative_n() {
    let v = json(&run(&["invariants", "rr", "--rho3", "2", "--rhoc2", "44", "--n", "-8"]));
    assert_eq!(v["chi"], -200);
}

#[test]
fn catalog_override_and_env() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("tiny.csv");
    std::fs::write(
        &csv,
        "id,b2,index,minus_K_cubed,h12,provenance,description\nA,1,4,64,0,test,a\nB,1,4,64,0,test,b\n",
    )
    .unwrap();
    let by_flag = json(&run(&["--catalog", csv.to_str().unwrap(), "fano", "search", "--rank-one"]));
    assert_eq!(by_flag["count"], 3);

    let by_env = Command::new(env!("CARGO_BIN_EXE_cy-smoother"))
        .env("CY_SMOOTHER_CATALOG", &csv)
        .args(["fano", "search", "--rank-one"])
        .output()
        .unwrap();
    assert_eq!(json(&by_env), by_flag);

    let empty = dir.path().join("empty.csv");
    std::fs::write(&empty, "").unwrap();
    let v = json(&run(&["--catalog", empty.to_str().unwrap(), "fano", "search"]));
    assert_eq!(v["count"], 0);

    let broken = dir.path().join("broken.csv");
    std::fs::write(&broken, "id,b2,index,minus_K_cubed,h12,provenance,description\nA,x,4,64,0,t,a\n").unwrap();
    assert_eq!(run(&["--catalog", broken.to_str().unwrap(), "fano", "search"]).status.code(), Some(2));
}
