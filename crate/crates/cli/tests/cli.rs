use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn csf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_csf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is JSON"))
        .collect()
}

fn write_graph(name: &str, json: &str) -> (tempfile::TempDir, PathBuf) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join(name);
    std::fs::write(&path, json).unwrap();
    (dir, path)
}

#[test]
fn compute_kpc_example() {
    let out = csf(&["compute", "--family", "kpc:a=4,b=2,c=4"]);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    assert_eq!(v["engine"], "formula");
    assert_eq!(v["composition_terms"].as_array().unwrap().len(), 11);
    assert_eq!(v["csf"]["terms"].as_array().unwrap().len(), 10);
    assert_eq!(v["csf"]["terms"][0]["coeff"], "162");
}

#[test]
fn compute_graph_file_with_oracle() {
    let (_dir, path) = write_graph("k3.json", r#"{"n":3,"edges":[[0,1],[1,2],[0,2]]}"#);
    let out = csf(&[
        "compute",
        "--graph",
        path.to_str().unwrap(),
        "--engine",
        "oracle",
    ]);
    assert!(out.status.success());
    let v = &lines(&out)[0];
    assert_eq!(v["csf"]["terms"][0]["partition"], serde_json::json!([3]));
    assert_eq!(v["csf"]["terms"][0]["coeff"], "6");
}

#[test]
fn compute_trivial_path_and_csv() {
    let out = csf(&["compute", "--family", "path:n=1"]);
    assert_eq!(lines(&out)[0]["csf"]["terms"][0]["coeff"], "1");
    let csv = csf(&["--format", "csv", "compute", "--family", "path:n=3"]);
    assert_eq!(
        String::from_utf8_lossy(&csv.stdout),
        "partition,coeff\n3,3\n21,1\n"
    );
}

#[test]
fn formula_and_oracle_engines_agree() {
    let f = lines(&csf(&["compute", "--family", "kkp:a=1,b=5,c=3"]));
    let o = lines(&csf(&[
        "compute",
        "--family",
        "kkp:a=1,b=5,c=3",
        "--engine",
        "oracle",
    ]));
    assert_eq!(f[0]["csf"], o[0]["csf"]);
}

#[test]
fn verify_grids_pass() {
    for (family, grid, total) in [
        ("pkp", "m=2..4,g=0..2,h=0..2", 27),
        ("kkp", "a=0..1,b=1..4,c=1..3", 24),
        ("kpg", "g=1..3,k=0..2,H=K1|C4|P3", 27),
    ] {
        let out = csf(&["verify", "--family", family, "--grid", grid]);
        assert!(out.status.success(), "{family}");
        let rows = lines(&out);
        let summary = &rows.last().unwrap()["summary"];
        assert_eq!(summary["total"], total);
        assert_eq!(summary["failed"], 0);
        let specs: Vec<&str> = rows[..rows.len() - 1]
            .iter()
            .map(|r| r["spec"].as_str().unwrap())
            .collect();
        let mut sorted = specs.clone();
        sorted.sort();
        assert_eq!(specs, sorted);
    }
}

#[test]
fn verify_identity_family() {
    let out = csf(&[
        "verify",
        "--family",
        "triple-deletion",
        "--trials",
        "50",
        "--order",
        "7",
    ]);
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(rows.last().unwrap()["summary"]["passed"], 50);
}

#[test]
fn identity_subcommand() {
    for check in ["ap-add", "ap-remove", "f-weights", "convolution"] {
        let out = csf(&["identity", check, "--trials", "10", "--max-n", "8"]);
        assert!(out.status.success(), "{check}");
    }
}

#[test]
fn positivity_scans() {
    let out = csf(&["positivity", "--family", "kayak", "--max-order", "8"]);
    assert!(out.status.success());
    let rows = lines(&out);
    assert_eq!(
        rows.last().unwrap()["summary"]["counterexamples"],
        serde_json::json!([])
    );

    let (_dir, path) = write_graph(
        "nonadjacent_hat.json",
        r#"{"n":6,"edges":[[0,1],[1,2],[2,3],[3,4],[4,1],[3,5]]}"#,
    );
    let out = csf(&["positivity", "--graph", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let rows = lines(&out);
    assert_eq!(rows[0]["witness"]["partition"], serde_json::json!([4, 2]));
    assert_eq!(rows[0]["witness"]["coeff"], "-2");
}

#[test]
fn output_is_deterministic() {
    let args = [
        "verify",
        "--family",
        "spidertail",
        "--max-order",
        "7",
        "--workers",
        "3",
    ];
    let a = csf(&args);
    let b = csf(&[
        "verify",
        "--family",
        "spidertail",
        "--max-order",
        "7",
        "--workers",
        "1",
    ]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn cache_dir_is_used() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let args = [
        "--cache-dir",
        cache,
        "compute",
        "--family",
        "cycle:n=5",
        "--engine",
        "oracle",
    ];
    let first = csf(&args);
    assert!(first.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() >= 1);
    assert_eq!(csf(&args).stdout, first.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        csf(&["compute", "--family", "kpc:a=4"]).status.code(),
        Some(2)
    );
    assert_eq!(
        csf(&["compute", "--family", "nosuch:n=1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        csf(&["verify", "--family", "pkp", "--grid", "m=x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(csf(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        csf(&[
            "compute",
            "--family",
            "clique:n=12",
            "--engine",
            "oracle",
            "--oracle-engine",
            "subsets"
        ])
        .status
        .code(),
        Some(3)
    );
}
