use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn mta(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mta"))
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .args(args)
        .output()
        .expect("run mta")
}

fn mta_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_mta"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn mta");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert!(o.status.success(), "stderr: {}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn heisenberg_verify_diagonal() {
    let o = mta(&["heisenberg", "verify", "--rank", "1", "--degree", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json_of(&o);
    assert_eq!(v["diagonal"], json!(["3", "2", "6"]));
    assert_eq!(v["passed"], json!(true));
    let t = mta(&[
        "heisenberg",
        "verify",
        "--rank",
        "1",
        "--degree",
        "3",
        "--format",
        "text",
    ]);
    assert!(stdout(&t).contains("diagonal: 3 2 6"));
}

#[test]
fn lattice_dims_for_z8() {
    let v = json_of(&mta(&[
        "lattice",
        "dims",
        "--gram",
        "data/z8.gram",
        "--coset",
        "4",
        "--max",
        "0",
    ]));
    assert_eq!(v["dims"], json!([2]));
    assert_eq!(v["coset"], json!(4));
    assert_eq!(v["conformal_weight"], json!("1"));
    let all = json_of(&mta(&["lattice", "weights", "--gram", "data/z8.gram"]));
    let weights: Vec<&str> = all
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["conformal_weight"].as_str().unwrap())
        .collect();
    assert_eq!(weights, ["0", "1/16", "1/4", "9/16", "1", "9/16", "1/4", "1/16"]);
}

#[test]
fn zhu_heisenberg_text() {
    let o = mta(&["zhu", "heisenberg", "--rank", "1", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("A_2 ≅ Mat_1(A) × Mat_1(A) × Mat_2(A)"));
}

#[test]
fn json_output_is_deterministic() {
    let args = ["lattice", "cosets", "--gram", "data/z8.gram"];
    assert_eq!(mta(&args).stdout, mta(&args).stdout);
    let args = ["heisenberg", "identity", "--rank", "2", "--degree", "3"];
    assert_eq!(mta(&args).stdout, mta(&args).stdout);
}

#[test]
fn usage_errors_exit_two() {
    let o = mta(&["heisenberg", "verify", "--rank", "5", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--rank"));
    let o = mta(&["heisenberg", "verify", "--rank", "1", "--degree", "9"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("--degree"));
    assert_eq!(
        mta(&["lattice", "dims", "--gram", "missing.gram"]).status.code(),
        Some(2)
    );
    assert_eq!(
        mta(&["partitions", "count", "--rank", "one", "--weight", "2"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        mta(&["lattice", "dims", "--gram", "data/z8.gram", "--coset", "8"])
            .status
            .code(),
        Some(2)
    );
    let o = mta(&[
        "--unsafe-no-limits",
        "zhu",
        "heisenberg",
        "--rank",
        "5",
        "--degree",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn fixture_round_trips_through_peirce_commands() {
    let alg = mta(&["peirce", "fixture", "matrix", "--sizes", "2,1;1,1"]);
    let text = stdout(&alg);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["max_degree"], json!(1));
    assert_eq!(v["dims"], json!([[5, 3], [3, 2]]));

    let report = json_of(&mta_stdin(&["peirce", "validate", "--algebra", "-"], &text));
    assert_eq!(report["passed"], json!(true));
    assert_eq!(report["checks"].as_array().unwrap().len(), 5);

    let z = json_of(&mta_stdin(
        &["peirce", "zigzag", "--algebra", "-", "--degree", "1"],
        &text,
    ));
    assert_eq!(z["passed"], json!(true));
    assert_eq!(z["laws"]["zd_dim"], json!(5));

    let m = json_of(&mta_stdin(
        &["peirce", "morita", "--algebra", "-", "--degree", "1"],
        &text,
    ));
    assert_eq!(m["passed"], json!(true));
    assert_eq!(m["roundtrips"].as_array().unwrap().len(), 2);
}

#[test]
fn verification_failures_exit_one() {
    let mut v: Value = serde_json::from_slice(&mta(&["peirce", "fixture", "matrix", "--sizes", "1,1"]).stdout).unwrap();
    v["unit0"] = json!(["2"]);
    let o = mta_stdin(&["peirce", "validate", "--algebra", "-"], &v.to_string());
    assert_eq!(o.status.code(), Some(1));
    assert_eq!(
        serde_json::from_slice::<Value>(&o.stdout).unwrap()["first_failure"],
        json!("unital_corner")
    );

    let degenerate = stdout(&mta(&["peirce", "fixture", "degenerate"]));
    let o = mta_stdin(&["peirce", "morita", "--algebra", "-", "--degree", "1"], &degenerate);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn partitions_and_zhu_outputs() {
    assert_eq!(
        json_of(&mta(&["partitions", "count", "--rank", "2", "--weight", "3"]))["count"],
        json!(10)
    );
    let list = json_of(&mta(&["partitions", "list", "--rank", "2", "--weight", "1"]));
    assert_eq!(list, json!([[[1], []], [[], [1]]]));
    let ex = json_of(&mta(&[
        "zhu",
        "exceptional",
        "--dims",
        "1,0,2",
        "--max",
        "2",
        "--format",
        "json",
    ]));
    assert_eq!(ex["exceptional"], json!([1]));
    let o = mta(&["zhu", "exceptional", "--rank", "2", "--max", "8"]);
    assert!(stdout(&o).contains("no exceptional degrees"));
    let cert = json_of(&mta(&["heisenberg", "zhu", "--rank", "1", "--degree", "4"]));
    assert_eq!(cert["block_sizes"], json!([1, 1, 2, 3, 5]));
    assert_eq!(cert["passed"], json!(true));
}

#[test]
fn zhu_rational_from_file() {
    let dir = std::env::temp_dir().join(format!("mta-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("modules.json");
    std::fs::write(
        &path,
        r#"[{"label":"S1","graded_dims":[1,1]},{"label":"S2","graded_dims":[1,0]}]"#,
    )
    .unwrap();
    let o = mta(&[
        "zhu",
        "rational",
        "--modules",
        path.to_str().unwrap(),
        "--degree",
        "1",
        "--format",
        "json",
    ]);
    let v = json_of(&o);
    assert_eq!(v["degree"], json!(1));
    assert_eq!(v["blocks"][1]["factors"], json!([{"ring": "Q", "size": 1}]));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn selftest_passes_with_seed() {
    let o = mta(&["selftest", "--seed", "7", "--cases", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn thread_count_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_mta"))
        .env("MTA_THREADS", "2")
        .args(["heisenberg", "verify", "--rank", "2", "--degree", "2"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let bad = Command::new(env!("CARGO_BIN_EXE_mta"))
        .env("MTA_THREADS", "zero")
        .args(["partitions", "count", "--rank", "1", "--weight", "1"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn json_output_matches_core_schemas() {
    let text = stdout(&mta(&[
        "peirce",
        "fixture",
        "heisenberg",
        "--rank",
        "1",
        "--max-degree",
        "2",
        "--point",
        "-1/2",
    ]));
    let p: mta_core::peirce::PeirceAlgebra = serde_json::from_str(&text).unwrap();
    assert_eq!(
        serde_json::from_str::<Value>(&text).unwrap(),
        serde_json::to_value(&p).unwrap()
    );
    assert!(p.validate().passed);

    let d = stdout(&mta(&[
        "zhu",
        "heisenberg",
        "--rank",
        "2",
        "--degree",
        "2",
        "--format",
        "json",
    ]));
    let parsed: mta_core::zhu::ZhuDescriptor = serde_json::from_str(&d).unwrap();
    assert_eq!(parsed, mta_core::zhu::heisenberg_zhu_descriptor(2, 2).unwrap());
}
