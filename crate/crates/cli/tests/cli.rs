use std::process::{Command, Output};

fn idcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_idcode"))
        .args(args)
        .env_remove("RUST_BACKTRACE")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = idcode(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&stdout(args)).unwrap()
}

const CODE: [&str; 6] = ["--q", "3", "--k", "2", "--delta", "1"];

fn with_code<'a>(head: &[&'a str], tail: &[&'a str]) -> Vec<&'a str> {
    head.iter()
        .chain(CODE.iter())
        .chain(tail)
        .copied()
        .collect()
}

#[test]
fn tag_of_worked_example() {
    let v = json(&with_code(
        &["id", "tag"],
        &["--identity-int", "587", "--j", "5"],
    ));
    assert_eq!(v["tag"], 1);
    assert_eq!(v["j"], 5);
}

#[test]
fn codeword_of_worked_example() {
    let s = stdout(&with_code(&["id", "codeword"], &["--identity-int", "587"]));
    assert_eq!(
        s.trim(),
        "2 1 0 2 0 1 1 0 2 0 0 0 0 0 0 2 1 0 2 2 2 1 0 2 2 2 2"
    );
}

#[test]
fn identity_file_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("id.txt");
    let p = path.to_str().unwrap();
    stdout(&with_code(
        &["id", "write"],
        &["--identity-int", "587", "--out", p],
    ));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "3 2 1\n7\n2\n2\n");
    let v = json(&["id", "tag", "--identity-file", p, "--j", "5"]);
    assert_eq!(v["tag"], 1);
}

#[test]
fn seeded_identity_tags_are_stable() {
    let args = [
        "id", "tag", "--q", "23", "--k", "3", "--delta", "2", "--seed", "4", "--j", "1000",
    ];
    assert_eq!(json(&args), json(&args));
}

#[test]
fn params_json() {
    let v = json(&with_code(&["id", "params"], &[]));
    assert_eq!(v["blocklength"], 27);
    assert_eq!(v["dimension"], 6);
    assert_eq!(v["distance"], 14);
    assert_eq!(v["lambda2_bound"], "13/27");
}

#[test]
fn bad_scaling_fails() {
    let out = idcode(&["id", "params", "--q", "3", "--k", "3", "--delta", "1"]);
    assert!(!out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("scaling"));
}

#[test]
fn identity_source_is_required_and_exclusive() {
    assert!(!idcode(&with_code(&["id", "tag"], &["--j", "1"]))
        .status
        .success());
    let both = with_code(
        &["id", "tag"],
        &["--seed", "1", "--identity-int", "2", "--j", "1"],
    );
    assert!(!idcode(&both).status.success());
}

#[test]
fn field_commands() {
    let info = json(&["field", "info", "--p", "3", "--m", "2"]);
    assert_eq!(info["modulus"], serde_json::json!([2, 2, 1]));
    assert_eq!(
        stdout(&["field", "element", "--p", "3", "--m", "2", "7"]).trim(),
        "2,2"
    );
    assert_eq!(
        stdout(&["field", "index", "--p", "3", "--m", "2", "a^3"]).trim(),
        "4"
    );
    assert_eq!(
        stdout(&["field", "calc", "--p", "3", "--m", "2", "mul", "a^4", "a^4"]).trim(),
        "1,0"
    );
    assert_eq!(stdout(&["field", "pow", "--p", "7", "3", "6"]).trim(), "1");
}

#[test]
fn rs_commands() {
    let rs = ["--p", "3", "--m", "2", "--n", "9", "--k", "3"];
    let cw: Vec<&str> = ["rs", "codeword"]
        .iter()
        .chain(&rs)
        .chain(&["--message", "a^6 a^1 a^1"])
        .copied()
        .collect();
    assert_eq!(stdout(&cw).trim(), "2,2 2,1 1,2 0,0 0,0 2,2 2,0 1,2 2,0");
    let ev: Vec<&str> = ["rs", "eval"]
        .iter()
        .chain(&rs)
        .chain(&["--message", "a^6 a^1 a^1", "--locator", "1"])
        .copied()
        .collect();
    assert_eq!(stdout(&ev).trim(), "2,1");
    let gm: Vec<&str> = ["rs", "genmatrix"].iter().chain(&rs).copied().collect();
    assert_eq!(stdout(&gm).lines().count(), 3);
    let md = stdout(&["rs", "mindist", "--p", "5", "--n", "5", "--k", "2"]);
    assert_eq!(md.trim(), "4");
}

#[test]
fn sim_writes_json_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("fa.csv");
    let c = csv.to_str().unwrap();
    let base = [
        "--q", "5", "--k", "3", "--delta", "2", "--trials", "200", "--seed", "3", "--csv", c,
    ];
    let fixed: Vec<&str> = ["sim", "fixed"].iter().chain(&base).copied().collect();
    let v = json(&fixed);
    assert_eq!(v["trials"], 200);
    assert_eq!(v["mode"], "fixed-randomness");
    let avg: Vec<&str> = ["sim", "average"].iter().chain(&base).copied().collect();
    assert_eq!(json(&avg)["mode"], "random-randomness");
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 3);
    assert!(lines[0].starts_with("q,k,delta,mode"));
    assert!(lines[2].contains("random-randomness"));
}

#[test]
fn sim_rejects_zero_trials() {
    let out = idcode(&with_code(&["sim", "fixed"], &["--trials", "0"]));
    assert!(!out.status.success());
}

#[test]
fn fig_emit_to_file_and_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("l2.csv");
    let o = out.to_str().unwrap();
    stdout(&[
        "fig",
        "emit",
        "--figure",
        "lambda2-vs-params",
        "--params",
        "23,3,2;193,3,2",
        "--out",
        o,
    ]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.contains("23,3,2,279841,255045,24796/279841,0.088607"));
    let s = stdout(&[
        "fig",
        "emit",
        "--figure",
        "fixed-randomness",
        "--params",
        "5,3,2",
        "--trials",
        "50",
    ]);
    assert!(s.lines().nth(1).unwrap().starts_with("5,3,2,50,0,"));
    assert!(!idcode(&["fig", "emit", "--figure", "nope"])
        .status
        .success());
}

#[test]
fn bench_and_rate_and_capacity() {
    let b = json(&[
        "bench",
        "tag",
        "--q",
        "23",
        "--k",
        "3",
        "--delta",
        "2",
        "--repetitions",
        "1",
    ]);
    assert!(b["wall_time_one_tag"].as_f64().unwrap() > 0.0);
    assert_eq!(b["lambda2_bound"], "24796/279841");
    let r = json(&[
        "id",
        "rate",
        "--family",
        "single-rs",
        "--q",
        "23",
        "--k",
        "3",
    ]);
    assert_eq!(r["ratio"], "3/2");
    let c = json(&["id", "check-capacity", "--family", "double-rs"]);
    assert_eq!(c["error"]["verdict"], "approaching");
    let s = json(&["id", "check-capacity", "--family", "single-rs"]);
    assert_eq!(s["tag"]["verdict"], "stalled");
}

#[test]
fn nearest_prime_utility() {
    assert_eq!(stdout(&["util", "nearest-prime", "1000"]).trim(), "997");
    assert_eq!(stdout(&["util", "nearest-prime", "10007"]).trim(), "10007");
}
