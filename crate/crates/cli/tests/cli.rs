use std::process::{Command, Output};

fn knotcoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_knotcoh")).args(args).env_remove("KNOTCOH_OUT_DIR").output().unwrap()
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn config_homology_json() {
    let out = knotcoh(&["config-homology", "--k", "2", "--n", "3", "--rep", "sign"]);
    assert!(out.status.success());
    let want: serde_json::Value =
        serde_json::from_str(r#"{"5": {"rank":0,"torsion":[2]}, "4": {"rank":0,"torsion":[3]}}"#).unwrap();
    assert_eq!(stdout_json(&out), want);
}

#[test]
fn table5_markdown() {
    let out = knotcoh(&["--format", "markdown", "tables", "--which", "table5"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<Vec<&str>> = text
        .lines()
        .skip(2)
        .map(|l| l.split('|').map(str::trim).filter(|s| !s.is_empty()).collect())
        .collect();
    assert_eq!(
        rows,
        [
            vec!["Z", "Z", "Z", "0", "Z_2"],
            vec!["A2hat", "Z", "Z^2", "Z⊕Z_2", "(Z_2)^2"],
            vec!["A2", "0", "Z", "Z⊕Z_2", "Z_2"],
        ]
    );
}

#[test]
fn graph_complex_json() {
    let out = knotcoh(&["graph-complex", "--a", "4", "--pred", "connected", "--export"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["homology"]["2"]["rank"], 6);
    assert_eq!(doc["complex"]["degrees"], serde_json::json!([2, 5]));
}

#[test]
fn table1_both_modes() {
    let paper = stdout_json(&knotcoh(&["tables", "--which", "table1", "--k", "4"]));
    assert_eq!(paper["integral"]["degrees"]["10"]["value"], "Z_6");
    assert_eq!(paper["discrepancies"], serde_json::json!([]));
    let computed = stdout_json(&knotcoh(&["tables", "--which", "table1", "--k", "4", "--mode", "computed"]));
    assert_eq!(computed["integral"]["degrees"]["9"]["value"], "Z_3");
    assert_eq!(computed["discrepancies"].as_array().unwrap().len(), 1);
}

#[test]
fn invalid_input_exits_2_with_json() {
    for args in [
        &["config-homology", "--k", "2", "--n", "3", "--rep", "nope"][..],
        &["graph-complex", "--a", "9", "--pred", "connected"],
        &["tables", "--which", "table9"],
        &["tables", "--which", "table1", "--k", "2"],
        &["--facts", "/nonexistent/facts.json", "verify"],
    ] {
        let out = knotcoh(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
        assert_eq!(err["error"], "invalid-input");
    }
}

#[test]
fn verify_passes() {
    let out = knotcoh(&["verify"]);
    assert_eq!(out.status.code(), Some(0));
    let doc = stdout_json(&out);
    assert_eq!(doc["checks"].as_array().unwrap().len(), 15);
    assert_eq!(doc["passed"], true);
}

#[test]
fn verify_fails_without_facts() {
    let dir = std::env::temp_dir().join(format!("knotcoh-empty-facts-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("facts.json");
    std::fs::write(&path, "[]").unwrap();
    let out = knotcoh(&["--facts", path.to_str().unwrap(), "verify"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout_json(&out)["passed"], false);
}

#[test]
fn output_is_deterministic_and_saved() {
    let dir = std::env::temp_dir().join(format!("knotcoh-out-{}", std::process::id()));
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_knotcoh"))
            .args(["--jobs", "2", "report"])
            .env("KNOTCOH_OUT_DIR", &dir)
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(std::fs::read(dir.join("report-k4.json")).unwrap(), a.stdout);
    assert!(String::from_utf8(a.stdout).unwrap().contains("q=4k−5 (computed) vs q=4k−4 (paper)"));
}
