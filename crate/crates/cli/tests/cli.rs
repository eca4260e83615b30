use std::io::Write;
use std::process::{Command, Stdio};

use eulerlc_cli::main_with;
use eulerlc_core::GridReport;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run_with_input(args: &[&str], input: &str) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("eulerlc").chain(args.iter().copied());
    let code = main_with(argv, &mut input.as_bytes(), &mut out, &mut err);
    Run {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn run(args: &[&str]) -> Run {
    run_with_input(args, "")
}

fn json(r: &Run) -> GridReport {
    serde_json::from_str(&r.out).unwrap_or_else(|e| panic!("{e}: {}", r.out))
}

#[test]
fn table_csv_last_line() {
    let r = run(&["table", "--kind", "d", "--max-n", "4", "--format", "csv"]);
    assert_eq!(r.code, 0);
    assert_eq!(r.out.lines().last(), Some("4,9,11,7,3,1"));
    let e = run(&["table", "--kind", "e", "--max-n", "4", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&e.out).unwrap();
    assert_eq!(
        v["rows"][4],
        serde_json::json!(["9", "11", "14", "18", "24"])
    );
}

#[test]
fn reverse_ultra_check_passes() {
    let r = run(&[
        "check",
        "--property",
        "reverse-ultra",
        "--max-n",
        "50",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 0, "{}", r.err);
    let rep = json(&r);
    assert_eq!(rep.command, "check");
    assert_eq!(rep.config["property"], "reverse-ultra");
    assert!(rep.checked_count > 0 && rep.violations.is_empty());
}

#[test]
fn ultra_check_fails_with_operands() {
    let r = run(&[
        "check",
        "--property",
        "ultra",
        "--max-n",
        "10",
        "--first",
        "--format",
        "json",
        "--no-timing",
    ]);
    assert_eq!(r.code, 1);
    let rep = json(&r);
    assert_eq!(rep.violations.len(), 1);
    let v = &rep.violations[0];
    assert!(v.n.is_some() && !v.lhs.is_empty() && !v.rhs.is_empty());
    assert_eq!(v.claim, "ultra-log-concave");
}

#[test]
fn pad_probe_counterexample() {
    let r = run(&[
        "probe",
        "--max-n",
        "4",
        "--depth",
        "10",
        "--convention",
        "pad",
        "--format",
        "json",
    ]);
    assert_eq!(r.code, 1);
    let rep = json(&r);
    let v = &rep.violations[0];
    assert_eq!(
        (v.n, v.depth, v.k, v.lhs.as_str()),
        (Some(4), Some(2), 3, "-12")
    );
    let shrink = run(&["probe", "--max-n", "4", "--depth", "unbounded"]);
    assert_eq!(shrink.code, 0, "{}", shrink.out);
}

#[test]
fn oracle_command() {
    assert_eq!(run(&["oracle", "--max-n", "9"]).code, 0);
    let over = run(&["oracle", "--max-n", "11"]);
    assert_eq!(over.code, 2);
    assert!(over.err.contains("oracle-cap"));
    assert_eq!(
        run(&["oracle", "--max-n", "11", "--oracle-cap", "6"]).code,
        2
    );
}

#[test]
fn verify_full_grid_counts_not_applicable() {
    let plain = json(&run(&[
        "verify", "--suite", "cubic", "--max-n", "12", "--format", "json",
    ]));
    let full = json(&run(&[
        "verify",
        "--suite",
        "cubic",
        "--max-n",
        "12",
        "--format",
        "json",
        "--full-grid",
    ]));
    assert_eq!(plain.checked_count, full.checked_count);
    assert_eq!(plain.not_applicable_count, 0);
    assert!(full.not_applicable_count > 0);
    let k = json(&run(&[
        "verify", "--max-n", "12", "--k-lo", "2", "--k-hi", "3", "--format", "json",
    ]));
    assert!(k.checked_count < plain.checked_count * 4);
    assert_eq!(k.config["k_lo"], "2");
}

#[test]
fn json_round_trips_byte_identical() {
    let r = run(&[
        "verify", "--suite", "all", "--max-n", "15", "--format", "json",
    ]);
    let rep = json(&r);
    let mut again = serde_json::to_vec(&rep).unwrap();
    again.push(b'\n');
    assert_eq!(String::from_utf8(again).unwrap(), r.out);
    assert!(rep.elapsed_ms.is_some());
    assert!(json(&run(&[
        "verify",
        "--max-n",
        "5",
        "--format",
        "json",
        "--no-timing"
    ]))
    .elapsed_ms
    .is_none());
}

#[test]
fn csv_report_rows() {
    let r = run(&[
        "probe",
        "--max-n",
        "6",
        "--convention",
        "pad",
        "--format",
        "csv",
    ]);
    assert_eq!(r.code, 1);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("n,k,depth,lhs,rhs,claim"));
    assert_eq!(lines.next(), Some("4,3,2,-12,0,l-log-concave"));
}

#[test]
fn sequences_from_stdin() {
    let d4 = "# row four\n0 9\n1 11\n2 7\n3 3\n4 1\n";
    let r = run_with_input(&["check", "--seq", "-", "--property", "llogconcave:2"], d4);
    assert_eq!(r.code, 0, "{}", r.err);
    let p = run_with_input(
        &[
            "probe",
            "--seq",
            "-",
            "--convention",
            "pad",
            "--format",
            "json",
        ],
        d4,
    );
    assert_eq!(p.code, 1);
    assert_eq!(json(&p).violations[0].k, 3);
    let gap = run_with_input(&["check", "--seq", "-"], "0 1\n2 1\n");
    assert_eq!(gap.code, 2);
    assert!(gap.err.contains("line 2"));
    let shifted = run_with_input(
        &["check", "--seq", "-", "--property", "ultra"],
        "1 1\n2 2\n3 1\n",
    );
    assert_eq!(shifted.code, 2);
}

#[test]
fn usage_errors_exit_two() {
    for args in [
        vec!["verify"],
        vec!["check", "--max-n", "0"],
        vec!["check", "--max-n", "5", "--k-lo", "4", "--k-hi", "2"],
        vec!["check", "--max-n", "5", "--k-hi", "9"],
        vec!["check", "--max-n", "5", "--property", "llogconcave:0"],
        vec![
            "probe",
            "--max-n",
            "5",
            "--depth",
            "unbounded",
            "--convention",
            "pad",
        ],
        vec!["probe", "--max-n", "5", "--depth", "0"],
        vec!["verify", "--max-n", "5", "--suite", "nope"],
        vec!["table", "--max-n", "5", "--seq", "x"],
        vec!["frobnicate", "--max-n", "5"],
        vec!["check", "--seq", "/nonexistent/file"],
    ] {
        let r = run(&args);
        assert_eq!(r.code, 2, "{args:?}");
        assert!(!r.err.is_empty() && r.out.is_empty(), "{args:?}");
    }
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn binary_honours_environment_and_stdin() {
    let out = Command::new(env!("CARGO_BIN_EXE_eulerlc"))
        .args(["table", "--format", "csv"])
        .env("EULERLC_MAX_N", "3")
        .env("EULERLC_KIND", "e")
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).lines().last(),
        Some("3,2,3,4,6")
    );

    let flag_wins = Command::new(env!("CARGO_BIN_EXE_eulerlc"))
        .args(["table", "--format", "csv", "--max-n", "2"])
        .env("EULERLC_MAX_N", "3")
        .output()
        .unwrap();
    assert_eq!(
        String::from_utf8_lossy(&flag_wins.stdout).lines().count(),
        4
    );

    let mut child = Command::new(env!("CARGO_BIN_EXE_eulerlc"))
        .args(["probe", "--seq", "-", "--convention", "pad"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"0 9\n1 11\n2 7\n3 3\n4 1\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let bad = Command::new(env!("CARGO_BIN_EXE_eulerlc"))
        .args(["check"])
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
