use std::process::Command;

fn smanifold(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_smanifold")).args(args).output().unwrap()
}

fn temp_json(name: &str) -> std::path::PathBuf {
    std::env::temp_dir().join(format!("smanifold-cli-{}-{name}.json", std::process::id()))
}

#[test]
fn sphere_report_has_tau_record() {
    let path = temp_json("sphere");
    let out = smanifold(&[
        "verify", "sphere", "--n", "2", "--s", "2", "--connection", "riemannian", "--points", "4", "--json",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let _ = std::fs::remove_file(&path);
    assert_eq!(v["schema"], "1");
    assert_eq!(v["pass"], true);
    let checks = v["checks"].as_array().unwrap();
    let tau = checks.iter().find(|c| c["name"] == "tau_equals_ns(2n+1)").unwrap();
    assert!(tau["max_residual"].as_f64().unwrap() < 1e-7);
    assert!(checks.iter().all(|c| c["connection"] != "ssm" && c["connection"] != "ssnm"));
    let names: Vec<(String, String)> = checks
        .iter()
        .map(|c| (c["name"].as_str().unwrap().into(), c["connection"].as_str().unwrap().into()))
        .collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
}

#[test]
fn flat_all_connections_pass() {
    let out = smanifold(&["verify", "flat", "--m", "2", "--t", "2", "--all", "--points", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    for conn in ["riemannian", "ssm", "ssnm"] {
        assert!(text.contains(conn));
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["verify", "flat", "--m", "1", "--t", "1", "--points", "0"],
        vec!["verify", "torus"],
        vec!["verify", "sphere", "--n", "1", "--s", "1"],
        vec!["verify", "flat", "--n", "2"],
        vec!["verify", "flat", "--tol", "-1"],
        vec!["verify", "flat", "--connection", "weird"],
    ] {
        assert_eq!(smanifold(&args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn impossible_tolerance_exits_1() {
    let out = smanifold(&["verify", "flat", "--points", "2", "--tol", "1e-300"]);
    assert_eq!(out.status.code(), Some(1));
}
