use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn homcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_homcert")).args(args).env_remove("HOMCERT_GUARD_LIMIT").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn count_reports_all_engines() {
    let o = homcert(&["count", "C(5)", "K(3)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "hom_bruteforce = 30\nhom_dp = 30\nhom_inclusion_exclusion = 30\n");
    let o = homcert(&["count", "--json", "DqK", "HWR"]);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn classify_widom_rowlinson() {
    let o = homcert(&["classify", "HWR"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("CompleteType, complete condition 1, crossover d=2\n"));
}

#[test]
fn generate_two_regular_on_six() {
    let o = homcert(&["generate", "6", "2"]);
    assert_eq!(stdout(&o).lines().count(), 2);
    let o = homcert(&["generate", "5", "3"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(homcert(&["count", "C(5)"]).status.code(), Some(64));
    assert_eq!(homcert(&["frobnicate"]).status.code(), Some(64));
    assert_eq!(homcert(&["qpoly", "C(5)", "--family", "spectral"]).status.code(), Some(64));
    assert_eq!(homcert(&["--help"]).status.code(), Some(0));
}

#[test]
fn runtime_errors_exit_1() {
    assert_eq!(homcert(&["count", "C(5)", "nope"]).status.code(), Some(1));
    assert_eq!(homcert(&["sweep", "/nonexistent/config.json"]).status.code(), Some(1));
}

fn write_config(dir: &Path, body: &str) -> String {
    let path = dir.join("sweep.json");
    std::fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_owned()
}

fn without_timestamp(dir: &Path) -> (String, Value) {
    let records = std::fs::read_to_string(dir.join("records.jsonl")).unwrap();
    let mut summary: Value = serde_json::from_str(&std::fs::read_to_string(dir.join("summary.json")).unwrap()).unwrap();
    summary.as_object_mut().unwrap().remove("timestamp");
    (records, summary)
}

#[test]
fn sweep_reports_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(
        dir.path(),
        r#"{"n_range":[4,8],"d_range":[2,3],"h_names":["HWR","Hind","E(2)"],"checks":["conjecture","mt-bound","lemma-c4"],"seed":7}"#,
    );
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    for (out, workers) in [(&a, "1"), (&b, "4")] {
        let o = homcert(&["sweep", &config, "--output", out.to_str().unwrap(), "--workers", workers]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ra, mut sa) = without_timestamp(&a);
    let (rb, mut sb) = without_timestamp(&b);
    assert_eq!(ra, rb);
    for s in [&mut sa, &mut sb] {
        s["config"].as_object_mut().unwrap().remove("workers");
        s["config"].as_object_mut().unwrap().remove("output");
    }
    assert_eq!(sa, sb);
    assert_eq!(sa["schema"], "homcert/1");
    let csv = std::fs::read_to_string(a.join("summary.csv")).unwrap();
    assert!(csv.starts_with("check,records,ok,violations,skipped,equalities\n"));
}

#[test]
fn guard_limit_turns_items_into_skipped_records() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"n_range":[6,6],"d_range":[3,3],"h_names":["HWR"],"checks":["conjecture"]}"#);
    let out = dir.path().join("r");
    let o = Command::new(env!("CARGO_BIN_EXE_homcert"))
        .args(["sweep", &config, "--output", out.to_str().unwrap(), "--json"])
        .env("HOMCERT_GUARD_LIMIT", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let summary: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(summary["skipped"], 2);
    let records = std::fs::read_to_string(out.join("records.jsonl")).unwrap();
    for line in records.lines() {
        let r: Value = serde_json::from_str(line).unwrap();
        assert_eq!(r["status"], "skipped");
        assert!(r["reason"].as_str().unwrap().contains("guard dp-"));
    }
}

#[test]
fn invalid_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_config(dir.path(), r#"{"n_range":[5,5],"d_range":[3,3],"h_names":["HWR"],"checks":["conjecture"]}"#);
    assert_eq!(homcert(&["sweep", &config]).status.code(), Some(64));
}

#[test]
fn external_graph6_input() {
    let dir = tempfile::tempdir().unwrap();
    let g6 = dir.path().join("graphs.g6");
    std::fs::write(&g6, "Cl\nG?LTE?\n").unwrap();
    let config = write_config(
        dir.path(),
        &format!(r#"{{"n_range":[4,8],"d_range":[2,2],"graph6_files":["{}"],"checks":["lemma-c4"]}}"#, g6.display()),
    );
    let out = dir.path().join("r");
    let o = homcert(&["sweep", &config, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let records = std::fs::read_to_string(out.join("records.jsonl")).unwrap();
    let graphs: Vec<String> = records
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap()["graph"].as_str().unwrap().to_owned())
        .collect();
    assert_eq!(graphs, vec!["Cl", "G?LTE?"]);
}
