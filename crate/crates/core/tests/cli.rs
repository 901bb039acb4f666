//! End-to-end tests of the command-line interface: exit codes, JSON schema
//! stability, and corpus fault injection.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_satnorm"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn classify_exit_codes_and_schema() {
    let normal = run(&["classify", "G2", "--hw", "1,0"]);
    assert_eq!(code(&normal), 0);
    let v = stdout_json(&normal);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"], "classify");
    assert_eq!(v["payload"]["status"], "normal");
    assert!(v["tool_version"].is_string());

    let bad = run(&["classify", "G2", "--hw", "0,1"]);
    assert_eq!(code(&bad), 1);
    let v = stdout_json(&bad);
    assert_eq!(v["payload"]["status"], "not_normal");
    assert_eq!(
        v["payload"]["evidence"]["certificate"]["id"],
        "paper:g2:case6.2"
    );
}

#[test]
fn weights_and_member() {
    let w = run(&["weights", "G2", "--hw", "1,0"]);
    assert_eq!(code(&w), 0);
    let v = stdout_json(&w);
    assert_eq!(v["payload"]["members"].as_array().unwrap().len(), 7);

    let m = run(&["member", "G2", "--hw", "1,0", "--weight", "1,-1,0"]);
    assert_eq!(code(&m), 0);
    let v = stdout_json(&m);
    assert_eq!(v["payload"]["is_member"], true);

    // The long root is outside M(pi1).
    let m = run(&["member", "G2", "--hw", "1,0", "--weight", "-1,-1,2"]);
    assert_eq!(code(&m), 1);
}

#[test]
fn saturated_and_hereditary_files() {
    let dir = std::env::temp_dir().join("satnorm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad_path = dir.join("g2-triple.json");
    std::fs::write(
        &bad_path,
        r#"{"dim": 3, "vectors": [["-1","-1","2"],["-2","1","1"],["0","-1","1"]]}"#,
    )
    .unwrap();
    let good_path = dir.join("basis.json");
    std::fs::write(
        &good_path,
        r#"{"dim": 2, "vectors": [["1","0"],["0","1"]]}"#,
    )
    .unwrap();

    let bad = run(&["saturated", "--file", bad_path.to_str().unwrap()]);
    assert_eq!(code(&bad), 1);
    let v = stdout_json(&bad);
    assert_eq!(v["payload"]["status"], "not_saturated");
    assert_eq!(
        v["payload"]["witness"]["v0"],
        serde_json::json!(["-1", "0", "1"])
    );

    let good = run(&["saturated", "--file", good_path.to_str().unwrap()]);
    assert_eq!(code(&good), 0);

    let hered = run(&["hereditary", "--file", bad_path.to_str().unwrap()]);
    assert_eq!(code(&hered), 1);

    let hered = run(&["hereditary", "G2", "--hw", "1,0"]);
    assert_eq!(code(&hered), 0);
}

#[test]
fn json_reports_are_byte_identical_across_runs() {
    for args in [
        vec!["classify", "F4", "--hw", "0,0,0,1"],
        vec!["roots", "G2"],
        vec!["weights", "F4", "--hw", "1,0,0,0"],
    ] {
        let a = run(&args);
        let b = run(&args);
        assert_eq!(a.stdout, b.stdout, "outputs differ for {args:?}");
        assert_eq!(code(&a), code(&b));
    }
}

#[test]
fn usage_errors_exit_64() {
    assert_eq!(code(&run(&["bogus-command"])), 64);
    assert_eq!(code(&run(&["classify", "E9", "--hw", "1"])), 64);
    assert_eq!(code(&run(&["classify", "G2", "--hw", "1"])), 64); // wrong arity
    assert_eq!(code(&run(&["classify", "G2", "--hw", "x,y"])), 64);
    assert_eq!(code(&run(&["member", "G2", "--hw", "1,0", "--weight", "1,0,0"])), 64); // not in lattice
    assert_eq!(code(&run(&["saturated", "--file", "/nonexistent.json"])), 64);
}

#[test]
fn roots_dump_reparses() {
    let out = run(&["roots", "E8"]);
    assert_eq!(code(&out), 0);
    let v = stdout_json(&out);
    assert_eq!(v["payload"]["root_count"], 240);
    assert_eq!(v["payload"]["coset_index"], 1);
    assert_eq!(v["payload"]["roots"].as_array().unwrap().len(), 240);
    // Rationals are strings in "p" or "p/q" form.
    let first = v["payload"]["fundamental_weights"][0][0].as_str().unwrap();
    assert!(first.chars().all(|c| c.is_ascii_digit() || c == '-' || c == '/'));
}

#[test]
fn verify_paper_single_case_and_fault_injection() {
    let single = run(&["verify-paper", "--case", "paper:e6:case4.4"]);
    assert_eq!(code(&single), 0);
    let v = stdout_json(&single);
    assert_eq!(v["payload"]["pass"], true);
    assert!(v["corpus_version"].is_string());

    // Tamper with one coefficient of one certificate; with the fast check
    // configuration, exactly that corpus entry must fail and the exit code
    // must be 2.
    let dir = std::env::temp_dir().join("satnorm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let corpus_path: PathBuf = dir.join("tampered.json");
    let original = satnorm::certs::EMBEDDED_CORPUS;
    let tampered = original.replacen(
        r#""coeffs": ["1/3", "1/3"]"#,
        r#""coeffs": ["2/3", "1/3"]"#,
        1,
    );
    assert_ne!(original, tampered, "tampering must change the corpus");
    std::fs::write(&corpus_path, tampered).unwrap();

    let out = run(&[
        "verify-paper",
        "--corpus",
        corpus_path.to_str().unwrap(),
        "--lemma-samples",
        "1",
        "--random-per-coset",
        "1",
        "--grid-degree",
        "0",
    ]);
    assert_eq!(code(&out), 2);
    let v = stdout_json(&out);
    let entries = v["payload"]["entries"].as_array().unwrap();
    let failing: Vec<&str> = entries
        .iter()
        .filter(|e| e["pass"] == false)
        .map(|e| e["id"].as_str().unwrap())
        .collect();
    assert_eq!(failing, vec!["cert:paper:g2:case6.2"]);
}

#[test]
fn text_format_is_available() {
    let out = bin()
        .args(["classify", "G2", "--hw", "1,0", "--format", "text"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("normal"));
    assert!(!text.trim_start().starts_with('{'));
}

#[test]
fn corpus_env_override_is_honored() {
    let dir = std::env::temp_dir().join("satnorm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let corpus_path = dir.join("env-tampered.json");
    let tampered = satnorm::certs::EMBEDDED_CORPUS.replacen(
        r#""v0": ["1", "0", "0", "0"]"#,
        r#""v0": ["0", "1", "0", "0"]"#,
        1,
    );
    std::fs::write(&corpus_path, tampered).unwrap();

    let out = bin()
        .env("SATNORM_CORPUS", corpus_path.to_str().unwrap())
        .args(["verify-paper", "--case", "paper:f4:pi4"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 2, "tampered v0 must fail verification");

    // Without the override the embedded corpus passes.
    let out = bin()
        .args(["verify-paper", "--case", "paper:f4:pi4"])
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
}

#[test]
fn parallel_runs_return_identical_witnesses() {
    let dir = std::env::temp_dir().join("satnorm-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("g2-triple-par.json");
    std::fs::write(
        &path,
        r#"{"dim": 3, "vectors": [["-1","-1","2"],["-2","1","1"],["0","-1","1"]]}"#,
    )
    .unwrap();
    let serial = run(&["saturated", "--file", path.to_str().unwrap()]);
    let parallel = run(&["saturated", "--file", path.to_str().unwrap(), "--parallel", "3"]);
    assert_eq!(code(&serial), 1);
    assert_eq!(code(&parallel), 1);
    let vs = stdout_json(&serial);
    let vp = stdout_json(&parallel);
    assert_eq!(vs["payload"]["witness"], vp["payload"]["witness"]);
    assert_eq!(vs["payload"]["status"], vp["payload"]["status"]);
    // Each flag configuration is itself reproducible.
    let parallel2 = run(&["saturated", "--file", path.to_str().unwrap(), "--parallel", "3"]);
    assert_eq!(parallel.stdout, parallel2.stdout);
}
