use std::process::{Command, Output};

fn tsct(args: &[&str], threads: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_tsct"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("TSCT_THREADS", t);
    }
    cmd.output().expect("binary runs")
}

#[test]
fn smallest_case_full_verification() {
    let out = tsct(&["--q", "4", "--ell", "5", "--format", "json", "--verify", "full"], None);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let json = String::from_utf8(out.stdout).unwrap();
    let table = tsct_core::output::from_json(&json).unwrap();
    assert_eq!(table.meta.q, 4);
    assert_eq!(tsct_core::output::to_json(&table).unwrap(), json);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(v["blocks_T"]["1,1"][1][0]["terms"][0][1], 10);
}

#[test]
fn usage_errors() {
    let out = tsct(&["--q", "4", "--ell", "7"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divides neither"));
    let out = tsct(&["--q", "6", "--ell", "5"], None);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("power of 2"));
    assert_eq!(tsct(&["--q", "4"], None).status.code(), Some(2));
    assert_eq!(tsct(&["--q", "4", "--ell", "5"], Some("zero")).status.code(), Some(2));
}

#[test]
fn list_checks() {
    let out = tsct(&["--list-checks"], None);
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    for name in ["structure", "closure", "positivity", "oracles"] {
        assert!(s.contains(name));
    }
}

#[test]
fn output_file_and_formats() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv", "latex", "text"] {
        let path = dir.path().join(format!("t.{format}"));
        let out = tsct(&["--q", "16", "--ell", "17", "--format", format, "--out", path.to_str().unwrap()], None);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert!(out.stdout.is_empty());
        assert!(std::fs::read_to_string(&path).unwrap().contains("Xi'"));
    }
}

#[test]
fn identical_output_across_thread_counts() {
    let args = ["--q", "32", "--ell", "11", "--verify", "none"];
    let one = tsct(&args, Some("1"));
    let four = tsct(&args, Some("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
}

#[test]
fn failing_check_reports_and_exits_one() {
    // the middle-vertex closed form disagrees with the computed module characters
    let out = tsct(&["--q", "8", "--ell", "3", "--verify", "fast"], None);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    let report: serde_json::Value = serde_json::from_str(err.lines().last().unwrap()).unwrap();
    assert_eq!(report["failed"][0]["name"], "closed-form");
    assert!(!out.stdout.is_empty());
}
