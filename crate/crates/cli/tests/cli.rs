use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures");
    dir.join(name).to_string_lossy().into_owned()
}

fn rigikit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rigikit"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn rigikit_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_rigikit"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn temp_file(name: &str, contents: &str) -> String {
    let path = std::env::temp_dir().join(format!("rigikit-cli-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

#[test]
fn hat_is_yes() {
    let out = rigikit(&["decide", &fixture("hat.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["answer"], "ALL_GENERIC_GLOBALLY_RIGID");
    assert_eq!(v["certificate"]["type"], "RigidWithOneLengthEdge");
}

#[test]
fn hat_through_the_reduction_is_yes() {
    let out = rigikit(&["decide", "--no-fast-path", &fixture("hat.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["trace"]["steps"].as_array().unwrap().len(), 1);
}

#[test]
fn lolly_is_not_2_connected_at_a() {
    let out = rigikit(&["decide", &fixture("lolly.json")]);
    assert_eq!(out.status.code(), Some(3));
    let v = stdout_json(&out);
    assert_eq!(v["answer"], "NOT_ALL");
    assert_eq!(v["certificate"]["type"], "Not2Connected");
    assert_eq!(v["certificate"]["witness"]["vertex"], "a");
}

#[test]
fn not_rigid_fixtures_exit_3() {
    for name in ["tri_l.json", "k4_l.json", "k4_d.json", "pend.json"] {
        assert_eq!(rigikit(&["decide", &fixture(name)]).status.code(), Some(3), "{name}");
    }
    assert_eq!(rigikit(&["decide", &fixture("mc5.json")]).status.code(), Some(0));
}

#[test]
fn malformed_input_is_a_structured_error() {
    let bad = temp_file(
        "bad.json",
        "{\"vertices\": [\"a\", \"b\"], \"edges\": [{\"u\": \"a\", \"v\": \"c\", \"kind\": \"dir\"}]}",
    );
    let out = rigikit(&["decide", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    let err: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    assert_eq!(err["error"]["kind"], "schema");

    let out = rigikit(&["decide", "/nonexistent/graph.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = rigikit_stdin(&["decide", "-"], "not json");
    assert_eq!(out.status.code(), Some(2));
    let out = rigikit(&["decide", "--format", "xml", &fixture("hat.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sparse_mode_rejects_dense_graphs() {
    let out = rigikit(&["decide", "--sparse", &fixture("k4_l.json")]);
    assert_eq!(out.status.code(), Some(3));
    let dense = r#"{"vertices":["a","b","c","d"],"edges":[
        {"u":"a","v":"b","kind":"dir"},{"u":"a","v":"c","kind":"dir"},{"u":"a","v":"d","kind":"dir"},
        {"u":"b","v":"c","kind":"dir"},{"u":"b","v":"d","kind":"dir"},{"u":"c","v":"d","kind":"dir"},
        {"u":"a","v":"b","kind":"len"},{"u":"c","v":"d","kind":"len"}]}"#;
    let out = rigikit_stdin(&["decide", "--sparse", "-"], dense);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn reads_standard_input() {
    let text = std::fs::read_to_string(fixture("hat.json")).unwrap();
    let a = rigikit_stdin(&["decide", "-"], &text);
    let b = rigikit(&["decide", &fixture("hat.json")]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let hat = fixture("hat.json");
    let bowtie = fixture("bowtie_mix.json");
    let slopes = fixture("triangle_slopes.json");
    let runs: Vec<Vec<&str>> = vec![
        vec!["decide", &bowtie],
        vec!["--format", "text", "decide", &bowtie],
        vec!["analyze", &bowtie],
        vec!["reduce", &hat],
        vec!["realize", &slopes],
        vec!["--seed", "11", "gen", "9", "--length-edges", "3"],
    ];
    for args in runs {
        let a = rigikit(&args);
        let b = rigikit(&args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn analyze_reports_everything() {
    let out = rigikit(&["analyze", &fixture("pend.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["conditions"]["rigid"], false);
    assert_eq!(v["matroid"]["rank"], 3);
    assert_eq!(v["bounded"]["blocks"], serde_json::json!([["a", "b"], ["c"]]));
}

#[test]
fn reduce_hat_reaches_the_digon() {
    let out = rigikit(&["reduce", &fixture("hat.json")]);
    let v = stdout_json(&out);
    let digon = std::fs::read_to_string(fixture("digon.json")).unwrap();
    let digon: Value = serde_json::from_str(&digon).unwrap();
    assert_eq!(v["result"], digon);
    assert_eq!(v["steps"][0]["kind"], "R2");
}

#[test]
fn realize_triangle() {
    let out = rigikit(&["realize", &fixture("triangle_slopes.json")]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["exact"], true);
    assert_eq!(v["coords"]["x0"], serde_json::json!([[2, 1], [0, 1]]));
    assert_eq!(v["coords"]["y0"], serde_json::json!([[1, 1], [1, 1]]));
}

#[test]
fn realize_rejects_repeated_slopes() {
    let text = std::fs::read_to_string(fixture("triangle_slopes.json"))
        .unwrap()
        .replace("[-1, 1]", "[1, 1]");
    let out = rigikit_stdin(&["realize", "-"], &text);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_frameworks() {
    let graph = fixture("tri_l.json");
    let p = temp_file(
        "p.json",
        r#"{"coords":{"a":[[0,1],[0,1]],"b":[[3,1],[0,1]],"c":[[0,1],[4,1]]}}"#,
    );
    let q = temp_file(
        "q.json",
        r#"{"coords":{"a":[[1,1],[1,1]],"b":[[-2,1],[1,1]],"c":[[1,1],[-3,1]]}}"#,
    );
    let rotated = temp_file(
        "rot.json",
        r#"{"coords":{"a":[[1,1],[1,1]],"b":[[1,1],[4,1]],"c":[[-3,1],[1,1]]}}"#,
    );
    let r = temp_file(
        "r.json",
        r#"{"coords":{"a":[[0,1],[0,1]],"b":[[3,1],[0,1]],"c":[[0,1],[5,1]]}}"#,
    );
    let v = stdout_json(&rigikit(&["compare", &graph, &p, &q]));
    assert_eq!(v, serde_json::json!({"equivalent": true, "congruent": true}));
    let v = stdout_json(&rigikit(&["compare", &graph, &p, &rotated]));
    assert_eq!(v, serde_json::json!({"equivalent": true, "congruent": false}));
    let v = stdout_json(&rigikit(&["compare", &graph, &p, &r]));
    assert_eq!(v, serde_json::json!({"equivalent": false, "congruent": false}));
    let missing = temp_file("m.json", r#"{"coords":{"a":[[0,1],[0,1]]}}"#);
    assert_eq!(rigikit(&["compare", &graph, &p, &missing]).status.code(), Some(2));
}

#[test]
fn generated_graphs_are_minimally_rigid() {
    for seed in ["1", "2", "3"] {
        let out = rigikit(&["--seed", seed, "gen", "7", "--length-edges", "2"]);
        assert_eq!(out.status.code(), Some(0));
        let g = String::from_utf8(out.stdout).unwrap();
        let analysis = stdout_json(&rigikit_stdin(&["analyze", "-"], &g));
        assert_eq!(analysis["conditions"]["rigid"], true);
        assert_eq!(analysis["conditions"]["length_edges"], 2);
        assert_eq!(analysis["matroid"]["rank"], 12);
        assert_eq!(analysis["conditions"]["direction_edges"], 10);
    }
    assert_eq!(rigikit(&["gen", "3", "--length-edges", "9"]).status.code(), Some(2));
}

#[test]
fn selftest_passes() {
    let out = rigikit(&["selftest", "--count", "50"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["passed"], true);
}
