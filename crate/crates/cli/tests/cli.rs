use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_recollement")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn compute(workspace: &str, expr: &[&str]) -> String {
    let ws = fixture(workspace);
    let mut args = vec!["compute", "--workspace", ws.to_str().unwrap()];
    args.extend_from_slice(expr);
    let o = run(&args);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).trim().to_string()
}

#[test]
fn algebra_info_lines() {
    for (file, line) in [
        ("r2.json", "dim 2, idim 0/0, Gorenstein d=0"),
        ("a9.json", "dim 9, idim 0/0, Gorenstein d=0"),
        ("b4.json", "dim 4, idim 0/0, Gorenstein d=0"),
        ("t6.json", "dim 6, idim 1/1, Gorenstein d=1"),
    ] {
        let o = run(&["algebra-info", fixture(file).to_str().unwrap()]);
        assert!(o.status.success());
        assert_eq!(stdout(&o).trim(), line);
    }
}

#[test]
fn malformed_input_is_an_input_error() {
    let dir = std::env::temp_dir().join(format!("recollement-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"p\": 2, \"vertices\": [").unwrap();
    let o = run(&["algebra-info", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("error"));
    let ws = fixture("r2-workspace.json");
    let o = run(&["compute", "--workspace", ws.to_str().unwrap(), "cm", "missing"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn compute_examples() {
    assert_eq!(compute("r2-workspace.json", &["ext", "k", "k", "1"]), "1");
    assert_eq!(compute("r2-workspace.json", &["cm", "k"]), "true");
    assert_eq!(compute("r2-workspace.json", &["qhom", "F(a)", "F(a)"]), "1");
    assert_eq!(compute("r2-workspace.json", &["qhom", "B", "B"]), "0");
    assert_eq!(compute("a9-workspace.json", &["stablehom", "m1", "m2"]), "0");
    assert_eq!(compute("a9-workspace.json", &["stablehom", "m2", "m2"]), "1");
    assert_eq!(compute("t6-workspace.json", &["cm", "s1"]), "false");
    assert_eq!(compute("t6-workspace.json", &["cm", "s2"]), "true");
    assert_eq!(compute("t6-workspace.json", &["cm", "P"]), "true");
    let f: serde_json::Value = serde_json::from_str(&compute("r2-workspace.json", &["--json", "F", "a"])).unwrap();
    assert_eq!(f["lo"], 0);
    assert_eq!(f["differentials"][0], serde_json::json!([[0, 0], [1, 0]]));
}

#[test]
fn output_is_deterministic() {
    let a = compute("a9-workspace.json", &["--json", "z1lambda", "S"]);
    let b = compute("a9-workspace.json", &["--json", "z1lambda", "S"]);
    assert_eq!(a, b);
}

#[test]
fn verify_suites_pass_on_r2() {
    let ws = fixture("r2-workspace.json");
    for suite in ["tstructure", "recollement", "roundtrip"] {
        let o = run(&["verify", "--workspace", ws.to_str().unwrap(), "--suite", suite, "--json"]);
        assert!(o.status.success(), "{suite}: {}", stdout(&o));
        let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(report["passed"], true);
        assert_eq!(report["vacuous"], false);
    }
}

#[test]
fn swapped_pairs_fail_with_witness() {
    let ws = fixture("r2-workspace.json");
    let o = run(&["verify", "--workspace", ws.to_str().unwrap(), "--suite", "tstructure", "--swap", "--json"]);
    assert_eq!(o.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let failed: Vec<&serde_json::Value> = report["checks"].as_array().unwrap().iter().filter(|c| c["status"] == "fail").collect();
    assert!(!failed.is_empty());
    assert!(failed.iter().all(|c| c["witness"].is_string()));
}

#[test]
fn list_context_example() {
    let o = run(&["verify", "--suite", "example-list-context"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("[1, 0]") && out.contains("[0, 1]"));
    let ws = fixture("a9-list-workspace.json");
    let o = run(&["verify", "--workspace", ws.to_str().unwrap(), "--suite", "recollement", "--quiet", "--seed", "11"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
}
