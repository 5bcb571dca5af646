use std::fs;
use std::process::{Command, Output};

fn thompson(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_thompson"))
        .args(args)
        .output()
        .expect("run thompson")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn normalize_x0_is_unchanged() {
    let o = thompson(&["normalize", "x0"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "00 -> 0\n01 -> 10\n1 -> 11\n");
}

#[test]
fn normalize_reduces_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("e.txt");
    fs::write(&path, "class: F\n0 -> 0\n10 -> 10\n11 -> 11\n").unwrap();
    let o = thompson(&["normalize", path.to_str().unwrap()]);
    assert_eq!(stdout(&o), "ε -> ε\n");
}

#[test]
fn compose_and_evaluate() {
    let o = thompson(&["compose", "x0", "x1"]);
    assert_eq!(stdout(&o), "00 -> 0\n010 -> 10\n011 -> 110\n1 -> 111\n");
    let o = thompson(&["evaluate", "x0", "1/2^2", "3/2^2"]);
    assert_eq!(stdout(&o), "1/2^2 -> 1/2^1\n3/2^2 -> 7/2^3\n");
}

#[test]
fn parse_errors_report_line_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.txt");
    fs::write(&path, "0 -> 0\n1 => 1\n").unwrap();
    let o = thompson(&["normalize", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("line 2"), "{}", stderr(&o));
}

#[test]
fn cert_f_for_identity_conjugators_verifies() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    assert!(thompson(&["cert-f", "--h", "id", "--g", "id", "--out", p])
        .status
        .success());
    let o = thompson(&["verify", p]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("generation"));
}

#[test]
fn hand_corrupted_certificate_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.json");
    let p = path.to_str().unwrap();
    assert!(thompson(&["cert-f", "--h", "x0", "--g", "x1", "--out", p])
        .status
        .success());
    let text = fs::read_to_string(&path).unwrap();
    let alpha = "\"alpha\": \"";
    let i = text.find(alpha).unwrap() + alpha.len();
    let end = i + text[i..].find('"').unwrap();
    fs::write(&path, format!("{}1/2^1{}", &text[..i], &text[end..])).unwrap();
    let o = thompson(&["verify", p]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("verification failed"), "{}", stderr(&o));
}

#[test]
fn seeded_output_is_byte_identical() {
    let a = thompson(&["cert-f", "--random", "1", "--seed", "42"]);
    let b = thompson(&["cert-f", "--random", "1", "--seed", "42"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn many_seeded_certificates_go_to_a_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("certs");
    let o = thompson(&[
        "cert-f",
        "--random",
        "3",
        "--seed",
        "7",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    for s in 7..10 {
        let f = out.join(format!("cert-f-{s}.json"));
        assert_eq!(
            thompson(&["verify", f.to_str().unwrap()]).status.code(),
            Some(0)
        );
    }
}

#[test]
fn wandering_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    let p = path.to_str().unwrap();
    let o = thompson(&["wandering", "x0", "--out", p]);
    assert!(o.status.success());
    assert!(stderr(&o).contains("(10]"));
    assert_eq!(thompson(&["verify", p]).status.code(), Some(0));
}

#[test]
fn exhausted_budgets_exit_2() {
    let o = Command::new(env!("CARGO_BIN_EXE_thompson"))
        .args(["wandering", "x0"])
        .env("THOMPSON_POWER_BUDGET", "0")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("inconclusive"));
}

#[test]
fn identity_has_no_wandering_set() {
    assert_eq!(thompson(&["wandering", "id"]).status.code(), Some(1));
}

#[test]
fn pingpong_and_orbit_commands() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    let o = thompson(&[
        "pingpong-t",
        "--n",
        "3",
        "--words",
        "100",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(stderr(&o).contains("0 evaluated to the identity"));
    assert_eq!(
        thompson(&["verify", p.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let q = dir.path().join("o.json");
    let o = thompson(&[
        "orbit-v",
        "--n",
        "2",
        "--len",
        "3",
        "--out",
        q.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        thompson(&["verify", q.to_str().unwrap()]).status.code(),
        Some(0)
    );
}

#[test]
fn verify_rejects_other_json() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.json");
    fs::write(&path, "{\"format\": \"other\", \"version\": 1}").unwrap();
    assert_eq!(
        thompson(&["verify", path.to_str().unwrap()]).status.code(),
        Some(1)
    );
}
