//! Process-level tests of the `klsum` binary: exit codes, output schemas,
//! byte determinism, and the table interchange path.

use std::process::{Command, Output};

fn klsum(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_klsum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn sweep_prints_exact_table() {
    let out = klsum(&["sweep", "--p", "5", "--r", "1", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(
        stdout(&out),
        "a_dlog,c0,c1,c2,c3\nzero,-1,0,0,0\n0,2,0,1,1\n1,0,0,2,2\n2,1,0,-1,-1\n3,-2,0,-2,-2\n"
    );
}

#[test]
fn usage_and_cap_errors_exit_2() {
    let out = klsum(&["sweep", "--p", "4", "--r", "1", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not prime"));

    let out = klsum(&[
        "sweep",
        "--p",
        "5",
        "--r",
        "4",
        "--n",
        "1",
        "--field-cap",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cap"));

    // Missing required arguments: clap's own usage error.
    let out = klsum(&["sweep", "--p", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_f625_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = klsum(&[
            "sweep",
            "--p",
            "5",
            "--r",
            "4",
            "--n",
            "1",
            "--format",
            "csv",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
    }
    let bytes_a = std::fs::read(&a).unwrap();
    let bytes_b = std::fs::read(&b).unwrap();
    assert_eq!(bytes_a, bytes_b);
    // Header plus 625 data rows (zero + 624 points).
    let text = String::from_utf8(bytes_a).unwrap();
    assert_eq!(text.lines().count(), 626);
    assert!(text.ends_with('\n'));
}

#[test]
fn classify_f25_rows() {
    let out = klsum(&["classify", "--p", "5", "--r", "2", "--n", "1"]);
    assert!(out.status.success());
    let body = stdout(&out);
    let rows: Vec<&str> = body.lines().skip(1).collect();
    assert_eq!(rows.len(), 24);
    let certified: Vec<&str> = rows
        .iter()
        .copied()
        .filter(|row| row.split(',').nth(2) == Some("2"))
        .collect();
    assert_eq!(certified.len(), 4);
    assert!(certified[0].starts_with("3,4,2,1,1,iff"));
    let summary = stderr(&out);
    assert!(summary.contains("rational points: 4 (exhaustive)"));

    let out = klsum(&[
        "classify",
        "--p",
        "5",
        "--r",
        "2",
        "--n",
        "1",
        "--list-all-e",
    ]);
    assert!(stdout(&out).starts_with("a_dlog,predicted_de,e,t,u,mode,actual_de,pass,all_e\n"));
}

#[test]
fn classify_reports_rational_impossibility() {
    let out = klsum(&["classify", "--p", "5", "--r", "3", "--n", "1"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("rational points: none possible"));
}

#[test]
fn classify_degenerate_cap() {
    let out = klsum(&["classify", "--p", "3", "--r", "7", "--n", "1"]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("e_cap = 1"));
    // Every row predicts degree 1 (label d = 2 = p - 1).
    for row in stdout(&out).lines().skip(1) {
        assert_eq!(row.split(',').nth(1), Some("2"));
    }
}

#[test]
fn verify_passes_on_clean_fields() {
    for (p, r, n) in [("5", "2", "1"), ("7", "3", "1"), ("5", "1", "2")] {
        let out = klsum(&["verify", "--p", p, "--r", r, "--n", n]);
        assert!(out.status.success(), "({p},{r},{n}): {}", stderr(&out));
        assert!(stderr(&out).contains("RESULT: PASS"));
    }
}

#[test]
fn verify_consumes_and_rejects_tables() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.csv");
    let out = klsum(&[
        "sweep",
        "--p",
        "5",
        "--r",
        "2",
        "--n",
        "1",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = klsum(&[
        "verify",
        "--p",
        "5",
        "--r",
        "2",
        "--n",
        "1",
        "--table",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stderr(&out).contains("RESULT: PASS"));

    // Corrupt one value: verification must fail with exit code 1.
    let text = std::fs::read_to_string(&path).unwrap();
    let corrupted = text.replace("\n3,4,0,0,0\n", "\n3,9,9,9,9\n");
    assert_ne!(text, corrupted, "fixture row changed");
    std::fs::write(&path, corrupted).unwrap();
    let out = klsum(&[
        "verify",
        "--p",
        "5",
        "--r",
        "2",
        "--n",
        "1",
        "--table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("RESULT: FAIL"));

    // Truncated tables are a usage error, not a math failure.
    std::fs::write(&path, "a_dlog,c0,c1,c2,c3\nzero,-1,0,0,0\n").unwrap();
    let out = klsum(&[
        "verify",
        "--p",
        "5",
        "--r",
        "2",
        "--n",
        "1",
        "--table",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn distinctness_exit_codes() {
    let out = klsum(&["distinctness", "--p", "5", "--r", "2", "--n", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "a,b\n");

    // q = 5^4 genuinely violates distinctness: 29 colliding orbit pairs.
    let out = klsum(&["distinctness", "--p", "5", "--r", "4", "--n", "1"]);
    assert_eq!(out.status.code(), Some(1));
    let body = stdout(&out);
    assert_eq!(body.lines().count(), 30);
    assert_eq!(body.lines().nth(1), Some("1,3"));
}

#[test]
fn bounds_thresholds_in_output() {
    let out = klsum(&["bounds", "--p", "5", "--r", "4", "--n", "1"]);
    assert!(out.status.success());
    let body = stdout(&out);
    assert!(body.contains("guaranteed"));
    assert!(body.ends_with("true\n"));

    let out = klsum(&[
        "bounds", "--p", "5", "--r", "2", "--n", "2", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["fischer_threshold"], serde_json::json!(26569));
    assert_eq!(json["fischer_bound_met"], serde_json::json!(false));

    let out = klsum(&["bounds", "--p", "26573", "--r", "2", "--n", "2"]);
    assert!(stdout(&out).contains("26573,2,2,26569,true"));
}

#[test]
fn embed_annex_only_on_sweep() {
    let out = klsum(&[
        "sweep",
        "--p",
        "5",
        "--r",
        "1",
        "--n",
        "1",
        "--embed-precision",
        "6",
    ]);
    let body = stdout(&out);
    assert!(body.starts_with("a_dlog,c0,c1,c2,c3,embed_re,embed_im\n"));
    assert!(body.contains("zero,-1,0,0,0,-1.000000,0.000000"));

    // Verification outputs never carry floats.
    let out = klsum(&["verify", "--p", "5", "--r", "2", "--n", "1"]);
    assert!(!stdout(&out).contains('.'));
}

#[test]
fn json_mirrors_parse() {
    let out = klsum(&[
        "sweep", "--p", "5", "--r", "1", "--n", "1", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["q"], serde_json::json!(5));
    assert_eq!(json["rows"][0]["a"], serde_json::json!("zero"));

    let out = klsum(&[
        "verify", "--p", "5", "--r", "2", "--n", "1", "--format", "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["summary"]["passed"], serde_json::json!(true));
    assert_eq!(json["summary"]["mode"], serde_json::json!("iff"));
}
