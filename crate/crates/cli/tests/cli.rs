//! The `eisterms` binary: exit codes, determinism, cache and L-value ingestion.

use std::path::Path;
use std::process::{Command, Output};

fn eisterms(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eisterms")).args(args).env_remove("EISTERMS_CACHE_DIR").output().expect("spawn eisterms")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = eisterms(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o)
}

fn json(args: &[&str]) -> serde_json::Value {
    serde_json::from_str(&ok(args)).unwrap()
}

#[test]
fn level_8_strata() {
    let v = json(&["cusps", "--level", "8"]);
    assert_eq!(v["count"], 6);
    let s = &v["strata"];
    assert_eq!((s["1"].as_u64(), s["2"].as_u64(), s["4"].as_u64(), s["8"].as_u64()), (Some(2), Some(1), Some(1), Some(2)));
}

#[test]
fn inadmissible_entries_are_exact_zero() {
    let v = json(&["cterm", "--level", "4", "--k", "3", "--eta", "chi4", "--psi", "1", "--all-cusps"]);
    let entries = v["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 3);
    let mut inadmissible = 0;
    for e in entries {
        if e["admissible"] == false {
            inadmissible += 1;
            let v: eisterms_cli::format::CycJson = serde_json::from_value(e["value"].clone()).unwrap();
            assert!(v.to_cyc().unwrap().is_zero(), "{e}");
        }
    }
    assert!(inadmissible > 0);
}

#[test]
fn single_cusp_selection() {
    let v = json(&["cterm", "--level", "4", "--k", "4", "--cusp", "2:1:1"]);
    assert_eq!(v["entries"].as_array().unwrap().len(), 1);
    let o = eisterms(&["cterm", "--level", "4", "--k", "4", "--cusp", "3:1:1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn exit_codes() {
    // clap usage error, violated hypothesis, unsupported field, missing L-value.
    assert_eq!(eisterms(&["cusps"]).status.code(), Some(2));
    assert_eq!(eisterms(&["cterm", "--level", "4", "--k", "1", "--eta", "chi4", "--psi", "chi4"]).status.code(), Some(2));
    assert_eq!(eisterms(&["hecke", "--op", "T", "--ideal", "2", "--level", "6", "--k", "3"]).status.code(), Some(2));
    assert_eq!(eisterms(&["--field", "5", "conmap", "--level", "2", "--k", "2"]).status.code(), Some(2));
    assert_eq!(eisterms(&["lvalue", "--d", "5", "--label", "chi5", "--k", "2"]).status.code(), Some(3));
    assert_eq!(eisterms(&["selftest", "--only", "1,2"]).status.code(), Some(0));
}

#[test]
fn output_is_deterministic_across_jobs_and_cache() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    for args in [
        &["conmap", "--level", "12", "--k", "3"][..],
        &["cterm", "--level", "15", "--k", "2", "--difference", "5"][..],
        &["ordinary-check", "--level", "12", "--k", "2", "--p", "3", "--output", "table"][..],
    ] {
        let plain = ok(&[&["--no-cache"], args].concat());
        let jobs = ok(&[&["--no-cache", "--jobs", "4"], args].concat());
        let miss = ok(&[&["--cache-dir", cache], args].concat());
        let hit = ok(&[&["--cache-dir", cache, "--jobs", "3"], args].concat());
        assert_eq!(plain, jobs, "{args:?}");
        assert_eq!(plain, miss, "{args:?}");
        assert_eq!(plain, hit, "{args:?}");
    }
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0, "cache directory stayed empty");
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn ingest_lvalues() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.tsv", "# nothing\n\n");
    assert_eq!(json(&["ingest-lvalues", &empty])["count"], 0);

    let rec = "5\tchi5\t2\t{\"order\":1,\"coeffs\":[\"-2/5\"]}\n";
    let one = write(dir.path(), "one.tsv", rec);
    let v = json(&["ingest-lvalues", &one]);
    assert_eq!(v["count"], 1);
    assert_eq!(v["records"][0]["value"]["coeffs"], serde_json::json!(["-2/5"]));
    let got = json(&["--lvalues", &one, "lvalue", "--d", "5", "--label", "chi5", "--k", "2"]);
    assert_eq!(got["value"]["coeffs"], serde_json::json!(["-2/5"]));

    let same = write(dir.path(), "same.tsv", &format!("{rec}{rec}"));
    assert_eq!(json(&["ingest-lvalues", &same])["count"], 1);

    let conflict = write(dir.path(), "conflict.tsv", &format!("{rec}5\tchi5\t2\t{{\"order\":1,\"coeffs\":[\"1\"]}}\n"));
    let o = eisterms(&["ingest-lvalues", &conflict]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));

    let malformed = write(dir.path(), "bad.tsv", &format!("# header\n{rec}5\tchi5\n"));
    let o = eisterms(&["ingest-lvalues", &malformed]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"), "{}", String::from_utf8_lossy(&o.stderr));
}

#[test]
fn error_classes_map_to_exit_codes() {
    use eisterms::Error as E;
    use eisterms_cli::error::CliError;
    assert_eq!(CliError::from(E::MissingLValue { d: 5, label: "chi5".into(), k: 2 }).exit_code(), 3);
    assert_eq!(CliError::from(E::Hypothesis("x".into())).exit_code(), 2);
    assert_eq!(CliError::from(E::Parse("x".into())).exit_code(), 2);
    assert_eq!(CliError::from(E::Unsupported("x".into())).exit_code(), 2);
    assert_eq!(CliError::from(E::DivisionByZero).exit_code(), 1);
    assert_eq!(CliError::Internal("x".into()).exit_code(), 1);
}
