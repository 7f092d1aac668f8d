use std::process::Command;

fn mrfnbhd(args: &[&str], dir: &std::path::Path) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_mrfnbhd")).args(args).current_dir(dir).output().unwrap()
}

#[test]
fn pipeline_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    let ok = |args: &[&str]| {
        let out = mrfnbhd(args, d);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        out
    };
    ok(&["generate-model", "--n", "6", "--D", "2", "--seed", "5", "--out", "m.json"]);
    ok(&["sample", "--model", "m.json", "--m", "20000", "--seed", "1", "--out", "s.txt"]);
    ok(&["erase", "--samples", "s.txt", "--p", "0.9", "--seed", "1", "--out", "e.txt"]);
    ok(&["learn", "--samples", "s.txt", "--model", "m.json", "--tau", "0.01", "--L", "4", "--out", "l.json"]);
    let learned: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(d.join("l.json")).unwrap()).unwrap();
    assert_eq!(learned["summary"]["exact_match"], true);
    ok(&["learn", "--model", "m.json", "--mode", "queried", "--tau", "0.01", "--L", "3", "--m", "5000"]);
    ok(&["verify-bounds", "--model", "m.json", "--pinsker-given", "1", "--floor-given", "2"]);
}

#[test]
fn failures_set_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path();
    assert_eq!(mrfnbhd(&["learn", "--mode", "full"], d).status.code(), Some(2));
    assert_eq!(mrfnbhd(&["sample", "--model", "missing.json", "--m", "5"], d).status.code(), Some(2));
    let exp = ["run-experiment", "--n", "6", "--D", "2", "--trials", "2", "--m", "20", "--tau", "0.01", "--L", "3"];
    let mut strict = exp.to_vec();
    strict.extend(["--min-recovery", "1.0"]);
    assert_eq!(mrfnbhd(&strict, d).status.code(), Some(1));
    assert!(mrfnbhd(&exp, d).status.success());
}
