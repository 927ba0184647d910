use std::process::{Command, Output};

fn wtree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wtree")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn count_examples() {
    for (lit, expected) in [("1,5,7|2,4,7", "18"), ("1,2,4,5|1,2,9", "72"), ("3|3", "1"), ("<6,1,1,1|3,3,3>", "3")] {
        let out = wtree(&["count", lit]);
        assert!(out.status.success(), "{lit}");
        assert_eq!(stdout(&out).trim(), expected, "{lit}");
    }
}

#[test]
fn count_explain_lists_partitions_and_correction() {
    let out = stdout(&wtree(&["count", "6,1,1,1|3,3,3", "--explain"]));
    assert!(out.contains("partitions (4)"));
    assert!(out.contains("T = 84"));
    assert!(out.contains("p = 36"));
    assert!(out.contains("S_3 = 1"));
    assert!(out.trim_end().ends_with("count = 3"));
    let out = stdout(&wtree(&["count", "7,5,1|7,4,2", "--explain"]));
    assert!(out.contains("⟨1,5|2,4⟩ ∪ ⟨7|7⟩"));
}

#[test]
fn parse_errors_exit_2() {
    let out = wtree(&["count", "1,2|x"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("column"));
    assert_eq!(wtree(&["count", "1,2|4"]).status.code(), Some(2));
    assert_eq!(wtree(&["system", "0|0"]).status.code(), Some(2));
}

#[test]
fn enumerate_formats() {
    let out = stdout(&wtree(&["enumerate", "5,12|1,7,9"]));
    assert_eq!(out.lines().count(), 6);
    for line in out.lines() {
        let doc: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(doc["vertices"].as_array().unwrap().len(), 5);
    }
    let out = stdout(&wtree(&["enumerate", "1|1", "--format", "json"]));
    let docs: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(docs.as_array().unwrap().len(), 1);
    let out = stdout(&wtree(&["enumerate", "6,1,1,1|3,3,3", "--census", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["trees"].as_array().unwrap().len(), 3);
    assert_eq!(v["census"], serde_json::json!({ "total": 3, "byOrder": { "1": 2, "3": 1 } }));
    let out = stdout(&wtree(&["enumerate", "1,2|3", "--format", "dot"]));
    assert_eq!(out.matches("graph ").count(), 1);
}

#[test]
fn budget_exhaustion_exits_4() {
    let out = Command::new(env!("CARGO_BIN_EXE_wtree"))
        .args(["enumerate", "1,2,6,10|4,5,10"])
        .env("WTREE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
    let out = Command::new(env!("CARGO_BIN_EXE_wtree"))
        .args(["verify", "--max-weight", "3"])
        .env("WTREE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(4));
}

#[test]
fn verify_small() {
    let dir = std::env::temp_dir().join(format!("wtree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let out = wtree(&["verify", "--max-weight", "1", "--report", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("types checked: 1, mismatches: 0"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["schema_version"], 1);
    assert_eq!(report["rows"][0]["formula"], "1");
    assert_eq!(report["rows"][0]["enumeration"], "1");
    let out = wtree(&["verify", "--max-weight", "6", "--report", path.to_str().unwrap()]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["summary"]["types_by_weight"]["6"], 121);
    assert_eq!(report["summary"]["mismatches"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn system_outputs() {
    let out = stdout(&wtree(&["system", "--qpoly", "3"]));
    assert_eq!(out.trim(), "3x_3−3x_1x_2+x_1³");
    let out = stdout(&wtree(&["system", "1,2|3"]));
    assert!(out.contains("a−3=0"));
    let out = stdout(&wtree(&["system", "4|4"]));
    assert!(out.contains("empty system"));
    let out = stdout(&wtree(&["system", "1,4|2,3", "--solve", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["solve"]["solutions"].as_array().unwrap().len(), 2);
    assert_eq!(v["solve"]["lower_bound"], true);
    let out = stdout(&wtree(&["system", "1,2,4|2,5", "--raw", "--format", "json"]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["reduction"].as_array().unwrap().iter().all(|c| c["holds"] == true));
}

#[test]
fn no_convergence_exits_5() {
    let out = wtree(&["system", "1,2,4|2,5", "--solve", "--starts", "0"]);
    assert_eq!(out.status.code(), Some(5));
}

#[test]
fn output_is_reproducible() {
    let a = wtree(&["system", "1,2,4|2,5", "--solve", "--starts", "50", "--seed", "7", "--jobs", "1"]);
    let b = wtree(&["system", "1,2,4|2,5", "--solve", "--starts", "50", "--seed", "7", "--jobs", "3"]);
    assert_eq!(a.stdout, b.stdout);
}
