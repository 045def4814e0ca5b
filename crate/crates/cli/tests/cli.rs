use std::process::{Command, Output};

fn sympgen(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sympgen"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn build_dumps_three_matrices() {
    let o = sympgen(&["build", "--n", "4", "--q", "3", "--a", "1"]);
    assert!(o.status.success());
    let s = stdout(&o);
    for h in ["# x\n8 8 3", "# y\n8 8 3", "# J\n8 8 3"] {
        assert!(s.contains(h), "{s}");
    }
    assert!(s.contains("x^2 = I"));
}

#[test]
fn build_rejects_n5_over_gf2() {
    let o = sympgen(&["build", "--n", "5", "--q", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("q > 2"));
}

#[test]
fn build_dumps_tau() {
    let o = sympgen(&["build", "--n", "12", "--q", "3", "--a", "1", "--dump-tau"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("# tau\n24 24 3"));
}

#[test]
fn verify_q2_suite() {
    let o = sympgen(&["verify", "prop-q2-*"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("6 claims: 6 pass, 0 fail"));
}

#[test]
fn verify_json_is_byte_stable() {
    let a = sympgen(&["verify", "main7*", "--format", "json"]);
    let b = Command::new(env!("CARGO_BIN_EXE_sympgen"))
        .args(["verify", "main7*", "--format", "json"])
        .env("SYMPGEN_THREADS", "1")
        .output()
        .unwrap();
    assert!(a.status.success() && b.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v.as_array().unwrap().len(), 6);
}

#[test]
fn verify_writes_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = sympgen(&[
        "verify",
        "subfield7",
        "--format",
        "json",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("\"status\": \"pass\""));
}

#[test]
fn bad_thread_count_is_an_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_sympgen"))
        .args(["verify", "subfield"])
        .env("SYMPGEN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn search_g9_at_seven_is_empty() {
    let o = sympgen(&["search", "--lemma", "G9", "--q", "7"]);
    assert!(o.status.success());
    assert!(stdout(&o).is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("no admissible a"));
}

#[test]
fn search_lists_values() {
    let o = sympgen(&["search", "--lemma", "M=H", "--q", "7", "--format", "json"]);
    assert!(o.status.success());
    let v: Vec<String> = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v.contains(&"1".to_string()));
}

#[test]
fn certify_default_words() {
    let o = sympgen(&["certify", "--n", "6", "--q", "2", "--words", "default"]);
    assert!(o.status.success(), "{}", stdout(&o));
    let s = stdout(&o);
    assert!(s.contains("quadratic form: inconsistent"));
    assert!(s.contains("verdict:   certified"));
}

#[test]
fn certify_from_a_word_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("words.txt");
    std::fs::write(&path, "# too few words\nx y\n").unwrap();
    let o = sympgen(&[
        "certify",
        "--n",
        "6",
        "--q",
        "2",
        "--words",
        path.to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["certificate"]["verdict"], "inconclusive");
}

#[test]
fn fields_lists_moduli() {
    let o = sympgen(&["fields", "--max", "9"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("2^3/1,1,0,1"));
    assert_eq!(s.lines().count(), 7);
}
