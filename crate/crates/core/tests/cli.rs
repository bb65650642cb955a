use std::path::PathBuf;

use assert_cmd::Command;
use serde_json::Value;

fn spinv() -> Command {
    Command::cargo_bin("spinv").unwrap()
}

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

/// Compares against `tests/golden/<name>`; `SPINV_BLESS=1` rewrites it.
fn check_golden(name: &str, actual: &[u8]) {
    let path = golden(name);
    if std::env::var_os("SPINV_BLESS").is_some() {
        std::fs::write(&path, actual).unwrap();
    }
    let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    assert!(
        expected == actual,
        "{name} differs from golden:\n{}",
        String::from_utf8_lossy(actual)
    );
}

fn lines(out: &[u8]) -> Vec<Value> {
    String::from_utf8_lossy(out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

fn summary(out: &[u8]) -> Value {
    lines(out).pop().expect("summary line")
}

#[test]
fn expand_goldens() {
    for kind in ["sigma", "rho"] {
        for (t, r) in [(1, 0), (0, 1), (1, 1), (2, 1), (3, 0)] {
            let out = spinv()
                .args(["expand", "--type", kind, "--t", &t.to_string(), "--r", &r.to_string()])
                .assert()
                .success()
                .get_output()
                .stdout
                .clone();
            check_golden(&format!("expand_{kind}_{t}_{r}.json"), &out);
        }
    }
}

#[test]
fn expand_term_counts() {
    let terms = |kind: &str, t: &str, r: &str| {
        let out = spinv().args(["expand", "--type", kind, "--t", t, "--r", r]).assert().success().get_output().stdout.clone();
        let v: Value = serde_json::from_slice(&out).unwrap();
        v["terms"].as_array().unwrap().len()
    };
    assert_eq!(terms("rho", "0", "1"), 2);
    assert_eq!(terms("sigma", "1", "0"), 1);
}

#[test]
fn usage_errors() {
    spinv().args(["expand", "--type", "rho", "--t", "-1", "--r", "0"]).assert().code(2);
    spinv().args(["expand", "--type", "tau", "--t", "1", "--r", "0"]).assert().code(2);
    spinv().args(["verify", "relations", "--group", "sp", "--n", "3"]).assert().code(2);
    spinv().args(["verify", "relations", "--field", "gf:2"]).assert().code(2);
    spinv().args(["verify", "relations", "--field", "gf:9"]).assert().code(2);
    spinv().arg("frobnicate").assert().code(2);
}

#[test]
fn caps_are_infeasible() {
    spinv().args(["verify", "kernel", "--group", "gl", "--n", "2", "--d", "1", "--maxdeg", "9"]).assert().code(3);
    spinv().args(["verify", "relations", "--n", "10"]).assert().code(3);
    spinv().args(["verify", "relations", "--max-word-len", "7"]).assert().code(3);
}

#[test]
fn relations_report() {
    let out = spinv()
        .args(["verify", "relations", "--group", "sp", "--n", "2", "--d", "2", "--field", "gf7", "--max-word-len", "1"])
        .assert()
        .code(0)
        .get_output()
        .stdout
        .clone();
    check_golden("relations_sp2_gf7_len1.jsonl", &out);
    let s = summary(&out);
    assert_eq!(s["scope"], "relations");
    assert_eq!(s["failures"], 0);
    assert!(s["checks"].as_u64().unwrap() > 0);
}

#[test]
fn full_symplectic_sweep() {
    let out = spinv()
        .args(["verify", "relations", "--group", "sp", "--n", "2", "--d", "2", "--field", "gf7"])
        .assert()
        .code(0)
        .get_output()
        .stdout
        .clone();
    let rows = lines(&out);
    assert!(rows[..rows.len() - 1].iter().all(|r| r["result"] == "zero"));
    assert_eq!(summary(&out)["checks"], 42000);
}

#[test]
fn orthogonal_relations_with_controls() {
    let out = spinv()
        .args(["verify", "relations", "--group", "o", "--n", "2", "--field", "q", "--max-word-len", "1", "--controls"])
        .assert()
        .code(0)
        .get_output()
        .stdout
        .clone();
    assert_eq!(summary(&out)["passed"], true);
}

#[test]
fn kernel_report() {
    let assert = spinv()
        .args(["verify", "kernel", "--group", "gl", "--n", "2", "--d", "1", "--maxdeg", "4"])
        .assert()
        .code(0);
    let out = assert.get_output();
    check_golden("kernel_gl2_d1_deg4.jsonl", &out.stdout);
    let rows = lines(&out.stdout);
    let dims: Vec<(u64, u64)> = rows[..4]
        .iter()
        .map(|r| (r["kernel_dim"].as_u64().unwrap(), r["span_dim"].as_u64().unwrap()))
        .collect();
    assert_eq!(dims, [(0, 0), (0, 0), (1, 1), (2, 2)]);
    assert!(String::from_utf8_lossy(&out.stderr).contains("kernel"));
}

#[test]
fn kernel_cache_is_reused() {
    let dir = std::env::temp_dir().join(format!("spinv-cache-{}", std::process::id()));
    let run = || {
        spinv()
            .args(["verify", "kernel", "--group", "sp", "--n", "2", "--d", "1", "--maxdeg", "3", "--cache"])
            .arg(&dir)
            .assert()
            .code(0)
            .get_output()
            .stdout
            .clone()
    };
    let first = run();
    assert!(std::fs::read_dir(&dir).unwrap().count() >= 3);
    assert_eq!(first, run());
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn iso_report() {
    let out = spinv()
        .args(["verify", "iso", "--n", "2", "--d", "2"])
        .assert()
        .code(0)
        .get_output()
        .stdout
        .clone();
    let rows = lines(&out);
    assert!(rows.iter().any(|r| r["identity"] == "eq2"));
    assert!(rows.iter().any(|r| r["identity"] == "eq3"));
    assert_eq!(summary(&out)["failures"], 0);
}

#[test]
fn invariance_report() {
    let out = spinv()
        .args(["verify", "invariance", "--group", "sp", "--n", "2", "--max-word-len", "2", "--samples", "3"])
        .assert()
        .code(0)
        .get_output()
        .stdout
        .clone();
    assert_eq!(summary(&out)["passed"], true);
}

#[test]
fn scaling_report() {
    let out = spinv().arg("scaling-check").assert().code(0).get_output().stdout.clone();
    check_golden("scaling_default.jsonl", &out);
    assert_eq!(summary(&out)["failures"], 0);
    spinv().args(["scaling-check", "--field", "gf:2"]).assert().code(2);
}

#[test]
fn reports_are_reproducible() {
    let args = ["verify", "invariance", "--group", "o", "--n", "3", "--max-word-len", "2", "--samples", "4", "--seed", "11"];
    let a = spinv().args(args).assert().code(0).get_output().stdout.clone();
    let b = spinv().args(args).assert().code(0).get_output().stdout.clone();
    assert_eq!(a, b);
}

#[test]
fn out_flag_writes_the_report() {
    let path = std::env::temp_dir().join(format!("spinv-out-{}.jsonl", std::process::id()));
    let stdout = spinv().arg("scaling-check").arg("--out").arg(&path).assert().code(0).get_output().stdout.clone();
    assert!(stdout.is_empty());
    let written = std::fs::read(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    let direct = spinv().arg("scaling-check").assert().code(0).get_output().stdout.clone();
    assert_eq!(written, direct);
}
