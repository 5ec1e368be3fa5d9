use std::path::PathBuf;
use std::process::{Command, Output};

fn podforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_podforge")).args(args).env("PODFORGE_THREADS", "2").output().expect("binary runs")
}

fn tmp(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("podforge-cli");
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn construct(seed: u64, name: &str) -> PathBuf {
    let path = tmp(name);
    let o = podforge(&["construct", "infinity", "--seed", &seed.to_string(), "--field", "fp:101", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    path
}

#[test]
fn invariants_of_y_inv() {
    let o = podforge(&["invariants", "--model", "Yinv", "--field", "fp:101"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "dim 7 deg 10");
}

#[test]
fn construct_then_verify() {
    let a = construct(7, "seed7-a.json");
    let b = construct(7, "seed7-b.json");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let report = tmp("seed7-report.json");
    let o = podforge(&["verify", a.to_str().unwrap(), "--mode", "exact", "--samples", "25", "--out", report.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["passed"], true);
    assert_eq!(json["configurations"], 25);
}

#[test]
fn foreign_legs_fail_verification() {
    let own: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(construct(7, "own.json")).unwrap()).unwrap();
    let other: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(construct(8, "other.json")).unwrap()).unwrap();
    let mut spliced = own.clone();
    spliced["l_lin"] = other["l_lin"].clone();
    spliced["leg_ideal_full"] = other["leg_ideal_full"].clone();
    let path = tmp("spliced.json");
    std::fs::write(&path, serde_json::to_string(&spliced).unwrap()).unwrap();
    let o = podforge(&["verify", "--in", path.to_str().unwrap(), "--samples", "5"]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn usage_errors() {
    assert_eq!(podforge(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(podforge(&["invariants", "--model", "Yinv", "--field", "fp:100"]).status.code(), Some(2));
    assert_eq!(podforge(&["invariants", "--model", "Nope"]).status.code(), Some(2));
    assert_eq!(podforge(&["verify", "/nonexistent/bundle.json"]).status.code(), Some(2));
    assert_eq!(podforge(&["reproduce", "--only", "11"]).status.code(), Some(2));
}

#[test]
fn degenerate_inputs_exit_with_three() {
    // two legs share their base anchor: the sixth leg is not determined
    let legs = tmp("shared-anchor.json");
    std::fs::write(
        &legs,
        r#"{"base": [["1","2","0"],["1","2","0"],["0","5","0"],["-2","7","0"],["4","4","0"]],
            "platform": [["2","1","0"],["-3","2","0"],["5","5","0"],["1","-7","0"],["0","3","0"]],
            "lengths_squared": ["3","7","1","2","9"]}"#,
    )
    .unwrap();
    assert_eq!(podforge(&["construct", "duporcq", "--legs", legs.to_str().unwrap()]).status.code(), Some(3));
    // all-zero coefficients never give a smooth plane cubic
    let o = podforge(&["construct", "cubic", "--seed", "0", "--bound", "0", "--retries", "2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn duporcq_completes_a_pentapod() {
    let legs = tmp("pentapod.json");
    std::fs::write(
        &legs,
        r#"{"base": [["1","2","0"],["3","-1","0"],["0","5","0"],["-2","7","0"],["4","4","0"]],
            "platform": [["2","1","0"],["-3","2","0"],["5","5","0"],["1","-7","0"],["0","3","0"]],
            "lengths_squared": ["3","7","1","2","9"]}"#,
    )
    .unwrap();
    let o = podforge(&["construct", "duporcq", "--legs", legs.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let pod: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(pod["base"].as_array().unwrap().len(), 6);
    assert_eq!(pod["lengths_squared"].as_array().unwrap().len(), 6);
}

#[test]
fn dual_twice_is_the_identity() {
    let input = tmp("point.json");
    let vars = ["m11", "m12", "m13", "m21", "m22", "m23", "m31", "m32", "m33", "x1", "x2", "x3", "y1", "y2", "y3", "r", "h"];
    let identity = ["1", "0", "0", "0", "1", "0", "0", "0", "1", "0", "0", "0", "0", "0", "0", "0", "1"];
    let json = serde_json::json!({"ambient": vars, "kind": "points", "basis": [identity]});
    std::fs::write(&input, json.to_string()).unwrap();
    let once = tmp("dual-once.json");
    let twice = tmp("dual-twice.json");
    let o = podforge(&["dual", "--form", "bsc17", "--in", input.to_str().unwrap(), "--out", once.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let first: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&once).unwrap()).unwrap();
    assert_eq!(first["basis"].as_array().unwrap().len(), 16);
    let o = podforge(&["dual", "--form", "bsc17", "--in", once.to_str().unwrap(), "--out", twice.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let back: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&twice).unwrap()).unwrap();
    assert_eq!(back["ambient"], json["ambient"]);
    assert_eq!(back["basis"], json["basis"]);
}

#[test]
fn model_writes_an_ideal() {
    let o = podforge(&["model", "Yp", "--field", "q"]);
    assert_eq!(o.status.code(), Some(0));
    let ideal: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(ideal["ring"]["vars"].as_array().unwrap().len(), 10);
    // the nine 2x2 minors of a 3x3 matrix
    assert_eq!(ideal["generators"].as_array().unwrap().len(), 9);
}

#[test]
fn reproduce_subset() {
    let o = podforge(&["reproduce", "--only", "2,10"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let text = stdout(&o);
    assert!(text.lines().filter(|l| l.starts_with("[PASS]")).count() == 2, "{text}");
    assert!(text.contains("2/2 criteria passed"));
}
