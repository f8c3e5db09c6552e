//! End-to-end tests of the `intval` binary: output text, JSON documents,
//! and the exit-code contract (0 true/success, 1 false, 2 input error,
//! 3 verification failure, 4 budget exhausted).

use std::io::Write;
use std::process::{Command, Stdio};

fn intval(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_intval"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 stdout"),
        String::from_utf8(out.stderr).expect("utf-8 stderr"),
    )
}

#[test]
fn fixdiv_of_even_product_over_even_integers() {
    let (code, stdout, _) = intval(&["fixdiv", "--subset", "2Z", "x*(x-2)"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "8");
}

#[test]
fn fixdiv_json_document_roundtrips() {
    let (code, stdout, _) = intval(&["fixdiv", "--subset", "2Z", "x*(x-2)", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["fixdiv"], "8");
    assert_eq!(doc["poly"], "x^2 - 2*x");
    assert_eq!(doc["subset"], "2Z");
}

#[test]
fn membership_uses_exit_codes_for_the_answer() {
    let member = &["member", "--subset", "2Z", "(x^3 + 2*x^2 + 2*x + 2)/2"];
    let (code, stdout, _) = intval(member);
    assert_eq!((code, stdout.trim()), (0, "true"));

    let non = &["member", "--subset", "3Z", "(x^3 + 2*x^2 + 2*x + 2)/2"];
    let (code, stdout, _) = intval(non);
    assert_eq!((code, stdout.trim()), (1, "false"));
}

#[test]
fn irreducible_reports_a_witness_split() {
    let (code, stdout, _) = intval(&["irreducible", "--subset", "2Z", "x"]);
    assert_eq!(code, 1);
    assert!(stdout.contains("false"));
    assert!(stdout.contains("witness"));

    let (code, stdout, _) = intval(&["irreducible", "--subset", "Z", "x"]);
    assert_eq!((code, stdout.trim()), (0, "true"));
}

#[test]
fn factorize_lists_every_resolution() {
    let (code, stdout, _) = intval(&["factorize", "--subset", "2Z", "(x^2 - 2*x)/8", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let facs = doc["factorizations"].as_array().unwrap();
    assert_eq!(doc["count"], facs.len());
    assert!(!facs.is_empty());
}

#[test]
fn lengths_prints_the_set() {
    let (code, stdout, _) = intval(&["lengths", "--subset", "2Z", "(x^4)/16"]);
    assert_eq!(code, 0);
    assert_eq!(stdout.trim(), "{4}");
}

#[test]
fn parse_errors_exit_2_with_position() {
    let (code, _, stderr) = intval(&["fixdiv", "--subset", "2Z", "x*(x-"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("byte"), "position-annotated: {stderr}");

    let (code, _, _) = intval(&["member", "--subset", "0Z", "x"]);
    assert_eq!(code, 2);
}

#[test]
fn oversized_residue_enumeration_exits_4() {
    let (code, _, stderr) = intval(&["residues", "--subset", "2Z", "--prime", "101", "--power", "5"]);
    assert_eq!(code, 4);
    assert!(stderr.contains("budget"), "budget message: {stderr}");
}

#[test]
fn construct_then_verify_through_a_file() {
    let dir = std::env::temp_dir().join(format!("intval-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("two-blocks.json");
    let path_s = path.to_str().unwrap();

    let (code, _, _) = intval(&["construct", "lengths", "--p", "2", "--m", "1,1", "--out", path_s]);
    assert_eq!(code, 0);
    let (code, stdout, _) = intval(&["verify", path_s]);
    assert_eq!(code, 0, "verify output:\n{stdout}");
    assert!(stdout.contains("result: pass"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn construct_streams_to_verify_on_stdin() {
    let (code, cert, _) = intval(&["construct", "unbounded", "--p", "2", "--n", "1"]);
    assert_eq!(code, 0);

    let mut child = Command::new(env!("CARGO_BIN_EXE_intval"))
        .args(["verify", "-", "--json"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(cert.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(doc["passed"], true);
}

#[test]
fn tampered_certificate_exits_3() {
    let (code, cert, _) = intval(&["construct", "unbounded", "--p", "2", "--n", "1"]);
    assert_eq!(code, 0);
    let tampered = cert.replace("\"schema\": 1", "\"schema\": 7");

    let dir = std::env::temp_dir().join(format!("intval-cli-bad-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad-schema.json");
    std::fs::write(&path, tampered).unwrap();

    let (code, stdout, _) = intval(&["verify", path.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert!(stdout.contains("FAIL schema"));

    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn block_commands_cover_the_group_grammar() {
    let (code, stdout, _) = intval(&["block", "atoms", "--group", "Z3", "[1, 2]"]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines, vec!["[1, 2]", "[1, 1, 1]", "[2, 2, 2]"]);

    let (code, stdout, _) =
        intval(&["block", "factorize", "--group", "Z3", "[1, 1, 1, 2, 2, 2]", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    assert_eq!(doc["count"], 2);
    assert_eq!(doc["atom"], false);

    let (code, _, _) = intval(&["block", "lemma24", "--group", "Z3", "[1, 1, 1]", "[2, 2, 2]"]);
    assert_eq!(code, 0);

    let (code, _, _) = intval(&["block", "atoms", "--group", "Q8", "[1]"]);
    assert_eq!(code, 2);
}

#[test]
fn relevant_primes_match_the_residue_counts() {
    let (code, stdout, _) = intval(&["relevant-primes", "--subset", "2Z", "--bound", "4", "--json"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&stdout).unwrap();
    let primes = doc["primes"].as_array().unwrap();
    assert_eq!(primes[0]["prime"], "2");
    assert_eq!(primes[0]["residues"], 1);
    assert_eq!(primes[1]["prime"], "3");
    assert_eq!(primes[1]["residues"], 3);
}
