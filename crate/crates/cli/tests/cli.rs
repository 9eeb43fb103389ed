use std::io::Write;
use std::process::{Command, Output};

fn etaforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_etaforge"))
        .args(args)
        .env_remove("ETAFORGE_GUARDS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<serde_json::Value> {
    stdout(out).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn matrix_json() {
    let out = etaforge(&["matrix", "--level", "2", "--which", "A", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"], serde_json::json!([[2, 1], [1, 2]]));
    let out = etaforge(&["matrix", "--level", "1", "--which", "B", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["rows"], serde_json::json!([[1]]));
}

#[test]
fn matrix_table_for_level_four() {
    let out = etaforge(&["matrix", "--level", "4", "--which", "B"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).lines().count(), 4);
}

#[test]
fn enumerate_examples() {
    let out = etaforge(&["enumerate", "--level", "2", "--k", "1", "--count-only"]);
    assert_eq!(stdout(&out).trim(), "4");
    let out = etaforge(&["enumerate", "--level", "1", "--k", "1"]);
    let lines = json_lines(&out);
    assert_eq!(lines.len(), 1);
    assert_eq!(lines[0]["exponents"], serde_json::json!({"1": 1}));
    assert_eq!(lines[0]["k"], 1);
    let out = etaforge(&[
        "enumerate", "--level", "6", "--k", "1", "--exact-level", "--primitive", "--quasi-irreducible", "--count-only",
    ]);
    let count: u64 = stdout(&out).trim().parse().unwrap();
    assert!(count >= 1);
}

#[test]
fn census_csv() {
    let out = etaforge(&["census", "--level", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut rows = text.lines();
    assert_eq!(rows.next(), Some("exponents,level,k,source,quasi_irreducible"));
    assert_eq!(rows.count(), 4);
    let out = etaforge(&["census", "--level", "4", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["within_bounds"], true);
    assert!(v["omega"]["exact"].is_string() && v["omega"]["floor"].is_string());
}

#[test]
fn tables_rows() {
    let out = etaforge(&["tables", "--kind", "kmin", "--levels", "6"]);
    assert_eq!(stdout(&out), "N,k_min,reference,status\n6,1,1,match\n");
    let out = etaforge(&["tables", "--kind", "kmax-kappa", "--levels", "6,16"]);
    let text = stdout(&out);
    assert!(text.contains("\n6,2,8,2,8,match\n"));
    assert!(text.contains("\n16,2,5,2,5,match\n"));
}

#[test]
fn tables_report_guard_per_row() {
    let out = etaforge(&["--max-divisors", "4", "tables", "--kind", "kmax-kappa", "--levels", "6,12"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("\n6,2,8,2,8,match\n"));
    assert!(text.lines().any(|l| l.starts_with("12,") && l.contains("guard")));
}

#[test]
fn factorize_verdicts() {
    let out = etaforge(&["factorize", "1^24", "--modulus", "2"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["factorizable"], true);
    assert_eq!(v["modulus"], 2);
    assert!(v["witness"]["left"]["exponents"].is_object());
    let out = etaforge(&["factorize", "1^2 2^-1"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["factorizable"], false);
    assert!(v["witness"].is_null());
}

#[test]
fn qexp_of_eta() {
    let out = etaforge(&["qexp", "1^1", "--terms", "3"]);
    assert_eq!(stdout(&out).trim(), "q^(1/24)·(1 - q - q^2 + O(q^3))");
}

#[test]
fn checks_pass() {
    for args in [
        &["check", "--target", "inverse-identities", "--max-level", "60"][..],
        &["check", "--target", "fn-divisibility", "--level", "2"],
        &["check", "--target", "conjecture1", "--levels", "6..30"],
        &["check", "--target", "valence", "--max-level", "6"],
        &["check", "--target", "census-bounds", "--levels", "2,3,4"],
    ] {
        let out = etaforge(args);
        assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(stdout(&out).starts_with("pass"), "{args:?}");
    }
    let out = etaforge(&["check", "--target", "conjecture2", "--p", "3", "--n", "4", "--json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["target"], "conjecture2");
    assert!(v["mismatch"].is_boolean());
}

#[test]
fn exit_codes() {
    let usage = etaforge(&["matrix", "--level", "2"]);
    assert_eq!(usage.status.code(), Some(2));
    let bad_level = etaforge(&["matrix", "--level", "0", "--which", "A"]);
    assert_eq!(bad_level.status.code(), Some(2));
    assert!(bad_level.stdout.is_empty());
    let bad_text = etaforge(&["qexp", "1^x"]);
    assert_eq!(bad_text.status.code(), Some(2));
    assert!(bad_text.stdout.is_empty());
    let guard = etaforge(&["--max-divisors", "2", "enumerate", "--level", "12", "--k", "2"]);
    assert_eq!(guard.status.code(), Some(3));
    let guard_k = etaforge(&["--max-k", "3", "enumerate", "--level", "2", "--k", "4"]);
    assert_eq!(guard_k.status.code(), Some(3));
    let odd = etaforge(&["check", "--target", "conjecture2", "--p", "2", "--n", "4"]);
    assert_eq!(odd.status.code(), Some(2));
}

#[test]
fn config_file_and_env() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "[guards]\nmax_divisors = 2").unwrap();
    let path = file.path().to_str().unwrap();
    let out = etaforge(&["--config", path, "enumerate", "--level", "12", "--k", "1", "--count-only"]);
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_etaforge"))
        .args(["enumerate", "--level", "12", "--k", "1", "--count-only"])
        .env("ETAFORGE_GUARDS", path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // flags win over the file
    let out = etaforge(&["--config", path, "--max-divisors", "16", "enumerate", "--level", "12", "--k", "1", "--count-only"]);
    assert!(out.status.success());

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "max_divisorz = 3").unwrap();
    let out = etaforge(&["--config", bad.path().to_str().unwrap(), "fn", "--level", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic_across_jobs() {
    let base = etaforge(&["census", "--level", "12"]);
    assert!(base.status.success());
    let again = etaforge(&["census", "--level", "12"]);
    let parallel = etaforge(&["--jobs", "4", "census", "--level", "12"]);
    assert_eq!(base.stdout, again.stdout);
    assert_eq!(base.stdout, parallel.stdout);
    let e1 = etaforge(&["enumerate", "--level", "6", "--k", "2"]);
    let e4 = etaforge(&["--jobs", "4", "enumerate", "--level", "6", "--k", "2"]);
    assert_eq!(e1.stdout, e4.stdout);
    let verbose = etaforge(&["-v", "enumerate", "--level", "6", "--k", "2"]);
    assert_eq!(e1.stdout, verbose.stdout);
    assert!(String::from_utf8_lossy(&verbose.stderr).starts_with("# etaforge"));
}

#[test]
fn kmin_kmax_fn() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&etaforge(&["kmin", "--level", "10"]))).unwrap();
    assert_eq!(v["k_min"], 2);
    let v: serde_json::Value = serde_json::from_str(&stdout(&etaforge(&["kmax", "--level", "16"]))).unwrap();
    assert_eq!(v["k_max"], 2);
    assert_eq!(v["kappa"], 5);
    let v: serde_json::Value = serde_json::from_str(&stdout(&etaforge(&["fn", "--level", "2"]))).unwrap();
    assert_eq!(v["quotient"], "1^1 2^1");
    assert_eq!(v["k"], 2);
}
