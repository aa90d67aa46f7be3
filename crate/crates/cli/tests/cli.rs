use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohomolab")).args(args).output().expect("spawn cohomolab")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn bundled_scenarios_pass() {
    for name in ["massey", "dickson-p3", "pc"] {
        let out = run(&["scenario", name]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", String::from_utf8_lossy(&out.stdout));
        let r = report(&out);
        assert_eq!(r["schema_version"], 1);
        assert_eq!(r["passed"], true);
    }
}

#[test]
fn scenario_list_names_bundled_files() {
    let out = run(&["scenario", "--list"]);
    assert_eq!(out.status.code(), Some(0));
    let names = report(&out)["bundled"].clone();
    for n in ["massey", "dickson-p3", "shear", "bestvina", "pc"] {
        assert!(names.as_array().unwrap().iter().any(|v| v == n), "{n}");
    }
}

#[test]
fn malformed_scenarios_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{ not json").unwrap();
    assert_eq!(run(&["scenario", bad.to_str().unwrap()]).status.code(), Some(2));

    let tag = dir.path().join("tag.json");
    std::fs::write(
        &tag,
        r#"{"schema_version":1,"name":"t","steps":[{"args":["davis","chi","--builtin","point"],
            "expect":[{"pointer":"/passed","equals":true,"provenance":"GUESS"}]}]}"#,
    )
    .unwrap();
    assert_eq!(run(&["scenario", tag.to_str().unwrap()]).status.code(), Some(2));

    let nested = dir.path().join("nested.json");
    std::fs::write(&nested, r#"{"schema_version":1,"name":"n","steps":[{"args":["scenario","massey"],"expect":[]}]}"#)
        .unwrap();
    assert_eq!(run(&["scenario", nested.to_str().unwrap()]).status.code(), Some(2));

    assert_eq!(run(&["scenario", "no-such-scenario"]).status.code(), Some(2));
}

#[test]
fn failed_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let s = dir.path().join("wrong.json");
    std::fs::write(
        &s,
        r#"{"schema_version":1,"name":"w","steps":[{"args":["davis","chi","--builtin","point"],
            "expect":[{"pointer":"/euler/chi_orbifold","equals":"1/3","provenance":"TRIVIAL"}]}]}"#,
    )
    .unwrap();
    let out = run(&["scenario", s.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["passed"], false);
    assert_eq!(r["steps"][0]["expectations"][0]["actual"], "1/2");
}

#[test]
fn reruns_are_byte_identical() {
    let a = run(&["scenario", "massey"]);
    let b = run(&["scenario", "massey"]);
    assert_eq!(a.stdout, b.stdout);
    let a = run(&["davis", "homology", "--builtin", "sphere2", "--subdivide", "--quotient"]);
    let b = run(&["davis", "homology", "--builtin", "sphere2", "--subdivide", "--quotient"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn json_out_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    let out = run(&["--json-out", path.to_str().unwrap(), "davis", "chi", "--builtin", "edge"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(std::fs::read(&path).unwrap(), out.stdout);
    let r = report(&out);
    assert_eq!(r["euler"]["chi_orbifold"], "1/4");
    assert_eq!(r["euler"]["consistent"], true);
}

#[test]
fn dump_matrix_writes_coordinate_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("d2.coo");
    let out = run(&[
        "cohomology",
        "--group",
        r#"{"family":"P2","p":3}"#,
        "--p",
        "3",
        "--max-degree",
        "2",
        "--dump-matrix",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["dims_mod_p"], serde_json::json!([1, 2, 4]));
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split_whitespace().collect();
    assert_eq!(header, ["26", "676", "1976", "F3"]);
    assert_eq!(lines.count(), 1976);
}

#[test]
fn resource_limit_exits_three() {
    let out = run(&["--max-cells", "10", "cohomology", "--group", r#"{"family":"P2","p":3}"#, "--p", "3"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("resource limit"));
}

#[test]
fn bad_input_exits_two() {
    assert_eq!(run(&["cohomology", "--group", r#"{"family":"nope"}"#, "--p", "3"]).status.code(), Some(2));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(2));
    // The sphere boundary is not full until it is subdivided.
    assert_eq!(run(&["davis", "build", "--builtin", "sphere2"]).status.code(), Some(2));
}

#[test]
fn d8_check_reports_incomplete_span() {
    let out = run(&["ringmodel", "check", "d8", "--max-degree", "24"]);
    assert_eq!(out.status.code(), Some(1));
    let r = report(&out);
    assert_eq!(r["span_matches"], false);
    assert_eq!(r["completed_span_matches"], true);
}

#[test]
fn bestvina_small_case() {
    let out = run(&["davis", "bestvina", "--n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let r = report(&out);
    assert_eq!(r["h3_exponent"], "2");
    assert_eq!(r["rank_h3"], 0);
}
