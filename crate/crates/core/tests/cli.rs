use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;
use twistform::classify::{e_matrix, w_matrix};
use twistform::gf::build_field;
use twistform::linalg::Matrix;
use twistform::wire::matrix_to_string;

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    run_env(args, stdin, &[])
}

fn run_env(args: &[&str], stdin: Option<&str>, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_twistform"));
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    cmd.env_remove("TWISTFORM_MAX_EXT");
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    let mut pipe = child.stdin.take().unwrap();
    pipe.write_all(stdin.unwrap_or("").as_bytes()).unwrap();
    drop(pipe);
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

fn random(n: &str, q: &str, m: &str, rank: &str, seed: &str) -> String {
    let o = run(&["random", "--n", n, "--q", q, "--m", m, "--rank", rank, "--seed", seed], None);
    assert!(o.status.success());
    stdout(&o)
}

#[test]
fn random_classify_verify_roundtrip() {
    let a = random("2", "2", "1", "2", "7");
    assert_eq!(a, random("2", "2", "1", "2", "7"));
    let c1 = run(&["classify", "--q", "2"], Some(&a));
    assert!(c1.status.success());
    let c2 = run(&["classify", "--q", "2", "--in", &a], None);
    assert_eq!(c1.stdout, c2.stdout);
    let cert = json(&c1);
    assert_eq!(cert["seed"], 7);
    let v = run(&["verify", "-"], Some(&stdout(&c1)));
    assert_eq!(v.status.code(), Some(0));
    assert_eq!(json(&v)["verdict"], "pass");
}

#[test]
fn labels_of_named_inputs() {
    let k = build_field(2, 1).unwrap();
    let w2 = matrix_to_string(&w_matrix(&k, 3, 2).unwrap());
    let cert = json(&run(&["classify", "--q", "2", "--in", &w2], None));
    assert_eq!(cert["label"], serde_json::json!({ "kind": "Ws", "s": 2 }));
    let e4 = matrix_to_string(&e_matrix(&k, 4));
    let cert = json(&run(&["classify", "--q", "2", "--in", &e4], None));
    assert_eq!(cert["label"], serde_json::json!({ "kind": "Ws", "s": 0 }));
    let a = random("3", "3", "2", "3", "1");
    let cert = json(&run(&["classify", "--q", "3", "--in", &a], None));
    assert_eq!(cert["label"]["kind"], "Ws");
    let full = random("2", "2", "1", "3", "4");
    let cert = json(&run(&["normalize", "--q", "2", "--in", &full], None));
    assert_eq!(cert["label"]["kind"], "Identity");
    let again = json(&run(&["classify", "--q", "2", "--in", &full], None));
    assert_eq!(again["label"]["kind"], "Identity");
}

#[test]
fn exit_codes() {
    let bad = run(&["classify", "--q", "2", "--in", r#"{"rows":1}"#], None);
    assert_eq!(bad.status.code(), Some(2));
    assert!(bad.stdout.is_empty());

    let low = random("3", "2", "1", "2", "3");
    assert_eq!(run(&["classify", "--q", "2", "--in", &low], None).status.code(), Some(3));
    let corank = random("2", "2", "1", "2", "3");
    assert_eq!(run(&["normalize", "--q", "2", "--in", &corank], None).status.code(), Some(3));
    assert_eq!(run(&["random", "--n", "2", "--q", "2", "--rank", "5"], None).status.code(), Some(3));

    let a = random("4", "9", "2", "4", "1");
    let capped = run(&["classify", "--q", "9", "--in", &a, "--max-ext-degree", "2"], None);
    assert_eq!(capped.status.code(), Some(4));
    let env = run_env(&["classify", "--q", "9", "--in", &a], None, &[("TWISTFORM_MAX_EXT", "2")]);
    assert_eq!(env.status.code(), Some(4));
}

#[test]
fn verify_reports_the_failing_step() {
    let a = random("3", "2", "2", "3", "11");
    let text = stdout(&run(&["classify", "--q", "2", "--in", &a], None));
    let mut cert: Value = serde_json::from_str(&text).unwrap();
    let steps = cert["trace"].as_array().unwrap().len();
    let last = steps - 1;
    let entry = &mut cert["trace"][last]["claimed"]["entries"][0][0]["coeffs"][0];
    *entry = Value::from(1 - entry.as_u64().unwrap());
    let v = run(&["verify", "-"], Some(&cert.to_string()));
    assert_eq!(v.status.code(), Some(5));
    assert_eq!(json(&v)["step"], last);
    assert!(String::from_utf8_lossy(&v.stderr).contains(&format!("step {last}")));

    let mut header: Value = serde_json::from_str(&text).unwrap();
    header["field"]["modulus"] = serde_json::json!([1, 0, 1]);
    assert_eq!(run(&["verify", "-"], Some(&header.to_string())).status.code(), Some(2));
}

#[test]
fn geometry_reports() {
    let pts = json(&run(&["points", "--q", "2", "--s", "1", "--n", "1", "--field-degree", "2"], None));
    assert_eq!(pts["count"], 1);
    let pts = json(&run(&["points", "--q", "2", "--s", "2", "--n", "2", "--field-degree", "2", "--counts", "2"], None));
    assert_eq!(pts["count"], 13);
    assert_eq!(pts["singular"], serde_json::json!(["(0:0:1)"]));

    let id = matrix_to_string(&Matrix::identity(&build_field(2, 1).unwrap(), 3));
    let aut = json(&run(&["aut", "--q", "2", "--n", "2", "--s", "2", "--matrix", &id], None));
    assert_eq!(aut["member"], true);
    assert_eq!(aut["delta"]["coeffs"], serde_json::json!([1]));
    assert_eq!(aut["structural"]["holds"], true);

    let orbits = json(&run(&["orbits", "--n", "1", "--q", "2", "--m", "1", "--rank", "1"], None));
    assert_eq!(orbits["consistent"], true);
    let kinds: Vec<u64> = orbits["classes"].as_array().unwrap().iter().map(|c| c["classified"]["s"].as_u64().unwrap()).collect();
    assert_eq!(kinds.len(), 2);
    assert!(kinds.contains(&0) && kinds.contains(&1));
}
