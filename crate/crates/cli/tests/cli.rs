use std::process::{Command, Output};

use serde_json::Value;

const GL_POINT: &str = r#"{"X":[["0","1"],["0","0"]],"u":["3","5"],"v":["1","0"]}"#;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_enhanced-orbits"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn classify_closed_point() {
    let out = run(&[
        "classify", "--group", "gl", "--rank", "2", "--point", GL_POINT,
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["is_closed"], Value::Bool(true));
}

#[test]
fn invariants_of_point() {
    let out = run(&[
        "invariants",
        "--group",
        "gl",
        "--rank",
        "2",
        "--point",
        GL_POINT,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["traces"], serde_json::json!(["0", "0"]));
    assert_eq!(v["pairings"], serde_json::json!(["3", "5"]));
}

#[test]
fn jordan_block_is_not_closed() {
    let p = r#"{"X":[["0","1"],["0","0"]],"u":["0","0"],"v":["0","0"]}"#;
    let out = run(&["classify", "--group", "gl", "--rank", "2", "--point", p]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["is_closed"], Value::Bool(false));
}

#[test]
fn point_from_file_with_embedded_group() {
    let dir = std::env::temp_dir().join(format!("eo-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("point.json");
    std::fs::write(
        &path,
        r#"{"group":{"kind":"sp","rank":1},"X":[["1","0"],["0","-1"]],"u":["1","1"]}"#,
    )
    .unwrap();
    let out = run(&["classify", "--point", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let mismatch = run(&[
        "classify",
        "--group",
        "sp",
        "--rank",
        "2",
        "--point",
        path.to_str().unwrap(),
    ]);
    assert_eq!(mismatch.status.code(), Some(3));
    assert_eq!(json(&mismatch)["error"]["code"], "descriptor_mismatch");
}

#[test]
fn represent_needs_a_square_root() {
    let out = run(&[
        "represent",
        "--group",
        "sp",
        "--rank",
        "1",
        "--invariants",
        r#"{"traces":["0"],"pairings":["2"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let rep = json(&out);
    assert_eq!(rep["u"][1], serde_json::json!({"a": "0", "b": "1", "d": 2}));
    let p = serde_json::to_string(&rep).unwrap();
    let back = run(&["invariants", "--point", &p]);
    assert_eq!(json(&back)["pairings"], serde_json::json!(["2"]));
}

#[test]
fn unsupported_inputs_exit_two() {
    let p = r#"{"X":[["0","-1"],["1","0"]],"u":["1","0"],"v":["0","1"]}"#;
    let out = run(&["classify", "--group", "gl", "--rank", "2", "--point", p]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["code"], "non_split_spectrum");
    let nonzero_trace = run(&[
        "represent",
        "--group",
        "gl",
        "--rank",
        "1",
        "--invariants",
        r#"{"traces":["1"],"pairings":["0"]}"#,
    ]);
    assert_eq!(nonzero_trace.status.code(), Some(2));
}

#[test]
fn schema_errors_exit_three() {
    assert_eq!(run(&["classify", "--unknown"]).status.code(), Some(3));
    assert_eq!(
        run(&[
            "classify",
            "--group",
            "gl",
            "--rank",
            "2",
            "--point",
            "{not json"
        ])
        .status
        .code(),
        Some(3)
    );
    let bad_shape = run(&[
        "invariants",
        "--group",
        "gl",
        "--rank",
        "2",
        "--point",
        r#"{"X":[["0"]],"u":["1"],"v":["1"]}"#,
    ]);
    assert_eq!(bad_shape.status.code(), Some(3));
    let bad_seed = run(&[
        "descend",
        "--input",
        r#"{"kind":"sp","rank":1,"k":1,"coeffs":["1","0"]}"#,
    ]);
    assert_eq!(bad_seed.status.code(), Some(3));
    let msg = json(&bad_seed)["error"]["message"]
        .as_str()
        .unwrap()
        .to_string();
    assert!(msg.contains("must be nonzero"), "{msg}");
    assert_eq!(run(&["sample", "--group", "sp"]).status.code(), Some(3));
}

#[test]
fn descend_and_witness() {
    let out = run(&[
        "descend",
        "--input",
        r#"{"kind":"sp","rank":2,"k":1,"coeffs":["0","1"]}"#,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let r = json(&out);
    assert_eq!(r["mult_k"], 1);
    assert_eq!(r["factors"], serde_json::json!([{"kind": "sp", "rank": 1}]));
    let closed = r#"{"kind":"gl","rank":3,"blocks":[
        {"eigenvalue":"1","seed":{"kind":"gl","rank":2,"k":2,"coeffs":["1","-1"]}},
        {"eigenvalue":"-1","seed":{"kind":"gl","rank":1,"k":0}}]}"#;
    let w = run(&["witness", "--input", closed]);
    assert_eq!(w.status.code(), Some(0));
    assert_eq!(json(&w)["delta"], -1);
    let not_gl = run(&[
        "witness",
        "--input",
        r#"{"kind":"sp","rank":1,"k":1,"coeffs":["0","1"]}"#,
    ]);
    assert_eq!(not_gl.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = run(&["sample", "--group", "oodd", "--rank", "2", "--seed", "7"]);
    let b = run(&["sample", "--group", "oodd", "--rank", "2", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["sample", "--group", "oodd", "--rank", "2", "--seed", "8"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn text_format() {
    let out = run(&[
        "classify", "--group", "gl", "--rank", "2", "--point", GL_POINT, "--format", "text",
    ]);
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("closed\n"), "{s}");
    let err = run(&[
        "classify", "--group", "gl", "--rank", "1", "--point", GL_POINT, "--format", "text",
    ]);
    assert!(err.stdout.is_empty());
    assert!(String::from_utf8(err.stderr)
        .unwrap()
        .starts_with("error [shape_mismatch]"));
}

#[test]
fn check_passes() {
    let out = run(&["check", "--max-rank", "3", "--trials", "10"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
    assert_eq!(json(&out)["passed"], Value::Bool(true));
}
