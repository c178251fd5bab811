use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn write_config(dir: &TempDir, name: &str, config: &Value) -> std::path::PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, config.to_string()).unwrap();
    path
}

fn gwkit(args: &[&str], config: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gwkit"));
    cmd.args(args);
    if let Some(c) = config {
        cmd.arg("--config").arg(c);
    }
    cmd.env_remove("GWKIT_BUDGET").output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn c4_rotation() -> Value {
    json!({"group": {"type": "cyclic", "n": 4}, "graph": {"type": "cycle", "n": 4}, "generator_images": [[1, 2, 3, 0]]})
}

fn c4_half_turn() -> Value {
    json!({"group": {"type": "cyclic", "n": 2}, "graph": {"type": "cycle", "n": 4}, "generator_images": [[2, 3, 0, 1]]})
}

#[test]
fn normalize_cancels_across_a_commuting_syllable() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({
        "graph": {"type": "finite", "edges": [[1, 2]]},
        "vertex_group": {"type": "integers"},
        "inputs": {"word": "1:3 2:5 1:-3"}
    });
    let out = gwkit(&["normalize"], Some(&write_config(&dir, "k2.json", &cfg)));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "2:5");
}

#[test]
fn predicates_on_the_five_cycle() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({"graph": {"type": "cycle", "n": 5}});
    let out = gwkit(&["predicates"], Some(&write_config(&dir, "c5.json", &cfg)));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "girth=5 untransvectable=true rigid=true");
}

#[test]
fn lazy_predicates_are_labelled() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({"graph": {"type": "line"}});
    let out = gwkit(&["predicates", "--radius", "3"], Some(&write_config(&dir, "line.json", &cfg)));
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("girth>7 untransvectable=true rigid=true"), "{text}");
    assert!(text.contains("ball of radius 3"), "{text}");
}

#[test]
fn quotients_of_the_four_cycle_are_not_isomorphic() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({"action": c4_rotation(), "inputs": {"other": c4_half_turn()}});
    let out = gwkit(&["iso"], Some(&write_config(&dir, "iso.json", &cfg)));
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(stdout(&out).trim(), "not isomorphic (vertex counts 1 vs 2)");

    let same = json!({"action": c4_rotation(), "inputs": {"other": c4_rotation()}});
    let out = gwkit(&["iso"], Some(&write_config(&dir, "same.json", &same)));
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("isomorphic"));
}

#[test]
fn quotient_prints_vertices_and_multiplicities() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({"action": c4_half_turn()});
    let out = gwkit(&["quotient"], Some(&write_config(&dir, "q.json", &cfg)));
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).trim(), "vertices=[0, 1] edges=[0-1x2]");
}

#[test]
fn membership_decision_sets_the_exit_code() {
    let dir = TempDir::new().unwrap();
    let base = |n: u64| {
        json!({
            "action": c4_rotation(),
            "vertex_group": {"type": "cyclic", "n": 3},
            "inputs": {"z": "0:1 1:2 ; 1", "e": 1, "f": [0, 1], "n": n}
        })
    };
    let yes = gwkit(&["in-a"], Some(&write_config(&dir, "yes.json", &base(2))));
    assert_eq!((yes.status.code(), stdout(&yes).trim().to_string()), (Some(0), "true".into()));
    let no = gwkit(&["in-a"], Some(&write_config(&dir, "no.json", &base(1))));
    assert_eq!((no.status.code(), stdout(&no).trim().to_string()), (Some(1), "false".into()));
}

#[test]
fn mmap_row_is_json() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({
        "action": {"family": "shift"},
        "vertex_group": {"type": "integers"},
        "inputs": {"z": "3:2 ; 1"}
    });
    let out = gwkit(&["mmap"], Some(&write_config(&dir, "m.json", &cfg)));
    assert_eq!(out.status.code(), Some(0));
    let row: Value = serde_json::from_str(stdout(&out).trim()).unwrap();
    assert_eq!(row["m"], json!([[3, 4]]));
    assert_eq!(row["f_length"], json!(4));
}

#[test]
fn malformed_config_exits_with_the_config_code() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({"graph": {"type": "cycle"}});
    let out = gwkit(&["run"], Some(&write_config(&dir, "bad.json", &cfg)));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("graph") && err.contains("`n`"), "{err}");

    let unknown = json!({"graph": {"type": "cycle", "n": 3}, "sedd": 4});
    let out = gwkit(&["run"], Some(&write_config(&dir, "typo.json", &unknown)));
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sedd"));

    let out = gwkit(&["run", "--suite", "no-such-suite"], None);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reports_go_to_the_output_file_and_are_reproducible() {
    let dir = TempDir::new().unwrap();
    let cfg = json!({"action": c4_rotation(), "vertex_group": {"type": "cyclic", "n": 3}, "seed": 9});
    let path = write_config(&dir, "run.json", &cfg);
    let mut lines = Vec::new();
    for k in 0..2 {
        let out_path = dir.path().join(format!("report{k}.jsonl"));
        let out = gwkit(
            &["run", "--suite", "mixing-support", "--suite", "mmap-estimates", "--samples", "300", "--out", out_path.to_str().unwrap()],
            Some(&path),
        );
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).contains("PASS"));
        let text = std::fs::read_to_string(&out_path).unwrap();
        let rows: Vec<Value> = text
            .lines()
            .map(|l| {
                let mut v: Value = serde_json::from_str(l).unwrap();
                v.as_object_mut().unwrap().remove("wall_ms");
                v
            })
            .collect();
        assert_eq!(rows.len(), 2);
        assert!(rows.iter().all(|r| r["seed"] == json!(9) && r["total"] == json!(300)));
        lines.push(rows);
    }
    assert_eq!(lines[0], lines[1]);
}

#[test]
fn inconclusive_only_runs_exit_with_three() {
    let out = Command::new(env!("CARGO_BIN_EXE_gwkit"))
        .args(["run", "--suite", "length-functions", "--samples", "2"])
        .env("GWKIT_BUDGET", "40")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    assert!(stdout(&out).contains("INCONCLUSIVE"));
}

#[test]
fn suites_are_listed() {
    let out = gwkit(&["suites"], None);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out).lines().count(), 9);
}
