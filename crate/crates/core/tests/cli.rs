use std::process::Command;

fn efem(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_efem")).args(args).output().unwrap()
}

#[test]
fn csv_is_deterministic() {
    let args = ["--problem", "1", "--levels", "3", "--cond", "--format", "csv"];
    let a = efem(&args);
    let b = efem(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "h,l2,h1_broken,nodal,cond,order_l2,order_h1,order_nodal");
    assert_eq!(lines.len(), 4);
    assert!(lines[1].starts_with("1.25000e-01,1.4"));
    assert!(lines[1].ends_with(",,,"));
}

#[test]
fn json_is_deterministic_apart_from_timestamp() {
    let args = ["--problem", "5", "--levels", "2", "--format", "json"];
    let parse = |o: std::process::Output| {
        assert!(o.status.success());
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        v["meta"]["timestamp_unix"] = serde_json::Value::Null;
        v
    };
    let a = parse(efem(&args));
    assert_eq!(a, parse(efem(&args)));
    assert_eq!(a["meta"]["degree"], 2);
    assert_eq!(a["rows"].as_array().unwrap().len(), 2);
    assert_eq!(a["order_l2"].as_array().unwrap().len(), 1);
}

#[test]
fn writes_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("table.md");
    let o = efem(&["--problem", "2", "--levels", "2", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let md = std::fs::read_to_string(out).unwrap();
    assert!(md.contains("| h=1/16"));
}

#[test]
fn interface_on_node_fails_without_output() {
    let o = efem(&["--problem", "1", "--h0", "1/9", "--levels", "1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("coincides with mesh node"), "{err}");
}

#[test]
fn usage_errors_exit_with_one() {
    assert_eq!(efem(&["--problem", "1", "--format", "xml"]).status.code(), Some(1));
    assert_eq!(efem(&["--problem", "1", "--degree", "3"]).status.code(), Some(1));
    assert_eq!(efem(&["--problem", "1", "--h0", "abc"]).status.code(), Some(1));
    assert_eq!(efem(&["--problem", "8"]).status.code(), Some(1));
    assert_eq!(efem(&["--problem", "1", "--quad", "40"]).status.code(), Some(1));
    assert_eq!(efem(&[]).status.code(), Some(1));
}

#[test]
fn invalid_problem_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(&path, "{\n  \"domain\": [0, 1],\n  \"layers\": [ { \"D\": [1.0] } ]\n}").unwrap();
    let o = efem(&["--problem", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line"), "{err}");
}

#[test]
fn degenerate_enrichment_is_a_numerical_failure() {
    // gamma = -0.025 * 1 * 2 / (2 - 1) = -0.05 equals alpha - x_{k+1} = 0.45 - 0.5
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("degenerate.json");
    std::fs::write(
        &path,
        r#"{
            "domain": [0.0, 1.0],
            "layers": [ { "D": [1.0], "f": [1.0] }, { "D": [2.0], "f": [1.0] } ],
            "interfaces": [ { "alpha": 0.45, "kind": "implicit", "lambda": 0.025 } ],
            "bc": { "left": { "dirichlet": 0.0 }, "right": { "dirichlet": 0.0 } },
            "exact": [[0.0], [0.0]]
        }"#,
    )
    .unwrap();
    let o = efem(&["--problem", path.to_str().unwrap(), "--h0", "1/4", "--levels", "1"]);
    assert_eq!(o.status.code(), Some(2), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(o.stdout.is_empty());
}

#[test]
fn custom_problem_file_converges() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("two_layer.json");
    std::fs::write(
        &path,
        r#"{
            "domain": [0.0, 2.0],
            "layers": [
                { "D": [1.0], "w": [1.0], "f": "manufactured" },
                { "D": [3.0], "w": [1.0], "f": "manufactured" }
            ],
            "interfaces": [ { "alpha": 0.7, "kind": "continuous" } ],
            "bc": { "left": { "dirichlet": 1.0 }, "right": { "dirichlet": 4.4 } },
            "exact": [[1.0, 3.0], [2.4, 1.0]]
        }"#,
    )
    .unwrap();
    let o = efem(&[
        "--problem",
        path.to_str().unwrap(),
        "--h0",
        "1/4",
        "--levels",
        "4",
        "--format",
        "json",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows[0]["elements"], 8);
    for r in rows {
        assert!(r["l2"].as_f64().unwrap() < 1e-12);
    }
}
