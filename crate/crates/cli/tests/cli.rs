use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn orbifusion(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbifusion"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn export(name: &str) -> TempDir {
    let dir = tempfile::tempdir().unwrap();
    let out = orbifusion(&["catalog", "export", name, "--dir", p(dir.path())]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    dir
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

#[test]
fn validate_and_dims() {
    let dir = export("E6affine");
    let ring = dir.path().join("E6affine.ring.json");
    let out = orbifusion(&["validate", p(&ring)]);
    assert_eq!(out.status.code(), Some(0));

    let out = orbifusion(&["--json", "dims", p(&ring)]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v.to_string().contains("rho"));
}

#[test]
fn schema_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"format":"orbifusion/1","labels":["1"],"unit":"1"}"#).unwrap();
    let out = orbifusion(&["validate", p(&bad)]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("dual"));

    assert_eq!(orbifusion(&["validate", p(&dir.path().join("missing.json"))]).status.code(), Some(3));
    assert_eq!(orbifusion(&["bogus"]).status.code(), Some(3));
    assert_eq!(orbifusion(&["catalog", "run", "NoSuchEntry"]).status.code(), Some(3));
    assert_eq!(orbifusion(&["--help"]).status.code(), Some(0));
}

#[test]
fn json_errors_carry_the_exit_code() {
    let out = orbifusion(&["--json", "catalog", "run", "NoSuchEntry"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["exit_code"], 3);
}

#[test]
fn orbifold_requires_attestation() {
    let dir = export("A5");
    let ring = dir.path().join("A5.ring.json");
    let out = orbifusion(&["orbifold", p(&ring), "--alpha", "rho4", "--rho", "rho2"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--assume-loi-trivial"));
}

#[test]
fn a5_orbifold_folds_to_d4() {
    let dir = export("A5");
    let ring = dir.path().join("A5.ring.json");
    let graph = dir.path().join("A5.graph.json");
    let dot = dir.path().join("folded.dot");
    let args = [
        "orbifold",
        p(&ring),
        "--alpha",
        "rho4",
        "--rho",
        "rho2",
        "--assume-loi-trivial",
        "--graph",
        p(&graph),
        "--dot",
        p(&dot),
    ];
    let out = orbifusion(&args);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("A_5 -> D_4"), "{text}");
    assert!(text.contains("rho2#0") && text.contains("rho2#1"));
    assert!(std::fs::read_to_string(&dot).unwrap().contains("graph"));

    // Output is deterministic.
    assert_eq!(orbifusion(&args).stdout, out.stdout);
}

#[test]
fn e6_needs_explicit_obstruction() {
    let dir = export("E6");
    let ring = dir.path().join("E6.ring.json");
    let base = ["orbifold", p(&ring), "--alpha", "alpha", "--rho", "rho", "--assume-loi-trivial"];
    let out = orbifusion(&base);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--obstruction"));

    let mut args = base.to_vec();
    args.extend(["--obstruction", "1/2"]);
    assert_eq!(orbifusion(&args).status.code(), Some(0));

    let mut args = base.to_vec();
    args.extend(["--obstruction", "0.5"]);
    assert_eq!(orbifusion(&args).status.code(), Some(3));
}

#[test]
fn obstruction_subcommand() {
    let dir = export("E6");
    let ring = dir.path().join("E6.ring.json");
    let out = orbifusion(&["--json", "obstruction", p(&ring), "--alpha", "alpha", "--rho", "rho"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("Inconclusive"), "{text}");
}

#[test]
fn adjacent_fixed_vertices_are_unsupported() {
    let dir = tempfile::tempdir().unwrap();
    let graph = dir.path().join("g.json");
    let perm = dir.path().join("p.json");
    std::fs::write(
        &graph,
        r#"{"format":"orbifusion/1","even":["x"],"odd":["y","o1","o2"],
            "edges":[["x","y",1],["x","o1",1],["x","o2",1]]}"#,
    )
    .unwrap();
    std::fs::write(&perm, r#"{"x":"x","y":"y","o1":"o2","o2":"o1"}"#).unwrap();
    let out = orbifusion(&["graph", "fold", p(&graph), "--perm", p(&perm), "--order", "2"]);
    assert_eq!(out.status.code(), Some(2));

    let out = orbifusion(&["graph", "identify", p(&graph)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("D_4"));
}

#[test]
fn su3_commands() {
    let out = orbifusion(&["su3", "fuse", "--level", "3", "1,0", "0,1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("(0,0) + (1,1)"));

    let out = orbifusion(&["--json", "su3", "m", "--k", "2"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["m"], 3);

    let dir = tempfile::tempdir().unwrap();
    let ring = dir.path().join("su3.json");
    let out = orbifusion(&["su3", "ring", "--level", "3", "--triality-zero", "--out", p(&ring)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(orbifusion(&["validate", p(&ring)]).status.code(), Some(0));
}

#[test]
fn catalog_commands() {
    let out = orbifusion(&["catalog", "list"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("A5") && text.contains("E6affine") && text.contains("SU3_level_24"));

    let out = orbifusion(&["catalog", "run", "E6affine"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(orbifusion(&["catalog", "run", "A7"]).status.code(), Some(0));
}
