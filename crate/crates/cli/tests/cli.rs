//! End-to-end CLI contract tests: subcommand output shapes and the exit-code
//! table (0 clean, 1 findings, 2 usage, 3 fatal).

use std::path::{Path, PathBuf};
use std::process::Command;

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_chainlint")
}

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn chainlint_in(dir: &Path, args: &[&str]) -> Run {
    let out = Command::new(bin())
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn chainlint(args: &[&str]) -> Run {
    chainlint_in(Path::new("."), args)
}

/// Write a Go module into a fresh temp dir.
fn write_module(files: &[(&str, &str)]) -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("go.mod"), "module example.com/tmpmod\n").unwrap();
    for (name, content) in files {
        let path = dir.path().join(name);
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(path, content).unwrap();
    }
    dir
}

// ---------------------------------------------------------------------------
// analyze: exit codes and outputs
// ---------------------------------------------------------------------------

#[test]
fn clean_tree_exits_zero_with_empty_results() {
    let run = chainlint(&["analyze", fixture("minimod").to_str().unwrap()]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    assert_eq!(run.stdout, "");
}

#[test]
fn findings_exit_one_unless_fail_on_none() {
    let root = fixture("calls/diamond");
    let any = chainlint(&["analyze", root.to_str().unwrap()]);
    assert_eq!(any.code, 1);
    assert_eq!(any.stdout.lines().count(), 1);

    let none = chainlint(&["analyze", root.to_str().unwrap(), "--fail-on", "none"]);
    assert_eq!(none.code, 0);
    assert_eq!(none.stdout, any.stdout, "policy must not change the report");
}

#[test]
fn missing_root_is_usage_error() {
    let run = chainlint(&["analyze", "/nonexistent/tree"]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("/nonexistent/tree"));
}

#[test]
fn analyze_out_writes_file_and_keeps_stdout_quiet() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.txt");
    let run = chainlint(&[
        "analyze",
        fixture("calls/diamond").to_str().unwrap(),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 1);
    assert_eq!(run.stdout, "");
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 1);
    assert!(text.contains("cosmos/block-panic"));
}

#[test]
fn suppressed_findings_are_not_actionable() {
    let dir = write_module(&[(
        "app.go",
        r#"package app

type Keeper struct{}

func (k Keeper) BeginBlock() {
	//consensus:ignore cosmos/block-panic boot invariant is operator-acknowledged
	panic("halt")
}
"#,
    )]);
    let run = chainlint(&["analyze", dir.path().to_str().unwrap()]);
    assert_eq!(run.code, 0, "suppressed finding must not fail the run");
    assert_eq!(run.stdout.lines().count(), 1, "but it is still reported");
    assert!(run.stdout.contains("(suppressed:"));
}

// ---------------------------------------------------------------------------
// baseline write + fail-on new-only
// ---------------------------------------------------------------------------

const BASE_APP: &str = r#"package app

type Keeper struct{}

func (k Keeper) BeginBlock() {
	if bad() {
		panic("halt")
	}
}

func bad() bool { return false }
"#;

#[test]
fn baseline_freezes_known_findings_and_flags_new_ones() {
    let dir = write_module(&[("app.go", BASE_APP)]);
    let root = dir.path().to_str().unwrap().to_string();
    let base = dir.path().join("known.txt");

    let write = chainlint(&[
        "baseline",
        "write",
        &root,
        "--out",
        base.to_str().unwrap(),
    ]);
    assert_eq!(write.code, 0);
    let text = std::fs::read_to_string(&base).unwrap();
    assert_eq!(text.lines().filter(|l| !l.starts_with('#')).count(), 1);

    // Everything is known: new-only passes.
    let quiet = chainlint(&[
        "analyze",
        &root,
        "--baseline",
        base.to_str().unwrap(),
        "--fail-on",
        "new-only",
    ]);
    assert_eq!(quiet.code, 0, "stderr: {}", quiet.stderr);
    assert_eq!(quiet.stdout.lines().count(), 1, "report still lists all");

    // A new violation in a new file trips the policy.
    std::fs::write(
        dir.path().join("clock.go"),
        r#"package app

import "time"

func (k Keeper) EndBlock() int64 {
	return time.Now().Unix()
}
"#,
    )
    .unwrap();
    let tripped = chainlint(&[
        "analyze",
        &root,
        "--baseline",
        base.to_str().unwrap(),
        "--fail-on",
        "new-only",
    ]);
    assert_eq!(tripped.code, 1);
    assert!(tripped.stderr.contains("1 new"));
}

#[test]
fn baseline_write_uses_configured_path_and_fails_without_one() {
    let dir = write_module(&[("app.go", BASE_APP)]);
    let root = dir.path().to_str().unwrap().to_string();

    let unconfigured = chainlint(&["baseline", "write", &root]);
    assert_eq!(unconfigured.code, 2, "no target path is a usage error");

    std::fs::write(
        dir.path().join(".chainlint"),
        "[output]\nbaseline = \"known.txt\"\n",
    )
    .unwrap();
    let configured = chainlint(&["baseline", "write", &root]);
    assert_eq!(configured.code, 0, "stderr: {}", configured.stderr);
    // A relative configured path lands inside the analysis root.
    assert!(dir.path().join("known.txt").exists());
}

#[test]
fn new_only_without_baseline_is_usage_error() {
    let run = chainlint(&[
        "analyze",
        fixture("calls/diamond").to_str().unwrap(),
        "--fail-on",
        "new-only",
    ]);
    assert_eq!(run.code, 2);
    assert!(run.stderr.contains("baseline"));
}

// ---------------------------------------------------------------------------
// scope
// ---------------------------------------------------------------------------

#[test]
fn scope_listing_matches_hand_computed_closure() {
    let run = chainlint(&["scope", fixture("minimod").to_str().unwrap()]);
    assert_eq!(run.code, 0);
    let keeper = "example.com/minichain/x/token/keeper";
    let expected = format!(
        "{keeper}\t(Keeper).BeginBlock\tBeginBlock\n\
         {keeper}\t(Keeper).Burn\tDeliverTx\n\
         {keeper}\t(Keeper).Transfer\tDeliverTx\n\
         {keeper}\t(Keeper).burnCoins\tDeliverTx\n\
         {keeper}\t(Keeper).mint\tBeginBlock\n\
         {keeper}\t(Keeper).moveCoins\tBeginBlock,DeliverTx\n"
    );
    assert_eq!(run.stdout, expected);
}

#[test]
fn scope_with_total_blacklist_is_empty() {
    let run = chainlint(&[
        "scope",
        fixture("minimod").to_str().unwrap(),
        "--mode",
        "blacklist",
        "--blacklist",
        "example.com",
    ]);
    assert_eq!(run.code, 0);
    assert_eq!(run.stdout, "");
}

#[test]
fn dump_graph_emits_sorted_edge_list() {
    let run = chainlint(&[
        "scope",
        fixture("calls/chain").to_str().unwrap(),
        "--dump-graph",
    ]);
    assert_eq!(run.code, 0);
    assert_eq!(
        run.stdout,
        "example.com/chain.A\texample.com/chain.B\tchain.go:3\tdirect\n\
         example.com/chain.B\texample.com/chain.C\tchain.go:5\tdirect\n"
    );
}

// ---------------------------------------------------------------------------
// eval / compare
// ---------------------------------------------------------------------------

/// A findings file of `n` rows for one rule, fingerprints f0..f{n-1}.
fn findings_file(dir: &Path, name: &str, rows: &[(&str, &str)]) -> PathBuf {
    let path = dir.join(name);
    let text: String = rows
        .iter()
        .enumerate()
        .map(|(i, (file, rule))| format!("{file}:10:2\t{rule}\tmessage\tf{i}\n"))
        .collect();
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn eval_reproduces_the_map_iteration_row() {
    let dir = tempfile::tempdir().unwrap();
    let rows: Vec<(&str, &str)> = (0..13).map(|_| ("m/k.go", "cosmos/map-iteration")).collect();
    let findings = findings_file(dir.path(), "f.txt", &rows);
    let labels: String = "fingerprint,label,canonical\n".to_string()
        + &(0..13)
            .map(|i| format!("f{i},{}\n", if i < 8 { "FP" } else { "TP" }))
            .collect::<String>();
    let labels_path = dir.path().join("l.csv");
    std::fs::write(&labels_path, labels).unwrap();

    let run = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
    ]);
    assert_eq!(run.code, 0, "stderr: {}", run.stderr);
    let row = run
        .stdout
        .lines()
        .find(|l| l.starts_with("cosmos/map-iteration"))
        .expect("rule row");
    for cell in ["13", "8", "5", "38.46%", "0.00%"] {
        assert!(row.contains(cell), "row {row} misses {cell}");
    }
}

#[test]
fn eval_groups_by_project_using_first_path_segment() {
    let dir = tempfile::tempdir().unwrap();
    let findings = findings_file(
        dir.path(),
        "f.txt",
        &[
            ("desmos/x/a.go", "cosmos/goroutine"),
            ("desmos/x/b.go", "cosmos/goroutine"),
            ("gaia/x/c.go", "cosmos/goroutine"),
        ],
    );
    let labels_path = dir.path().join("l.csv");
    std::fs::write(
        &labels_path,
        "fingerprint,label,canonical\nf0,TP\nf1,FP\nf2,TP\n",
    )
    .unwrap();
    let run = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
        "--group-by",
        "project",
    ]);
    assert_eq!(run.code, 0);
    assert!(run.stdout.lines().any(|l| l.starts_with("desmos")));
    assert!(run.stdout.lines().any(|l| l.starts_with("gaia")));
}

#[test]
fn eval_errors_use_exit_codes_two_and_three() {
    let dir = tempfile::tempdir().unwrap();
    let findings = findings_file(dir.path(), "f.txt", &[("p/a.go", "cosmos/goroutine")]);
    let labels_path = dir.path().join("l.csv");

    // Dangling DUP target: fatal (3).
    std::fs::write(
        &labels_path,
        "fingerprint,label,canonical\nf0,DUP,missing\n",
    )
    .unwrap();
    let dangling = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
    ]);
    assert_eq!(dangling.code, 3);

    // Unlabeled finding: fatal (3) and the fingerprint is named.
    std::fs::write(&labels_path, "fingerprint,label,canonical\n").unwrap();
    let unlabeled = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
    ]);
    assert_eq!(unlabeled.code, 3);
    assert!(unlabeled.stderr.contains("f0"));

    // ... unless explicitly allowed (0).
    let allowed = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
        "--allow-unlabeled",
    ]);
    assert_eq!(allowed.code, 0);

    // Unknown group key: usage (2).
    let bad_key = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
        "--group-by",
        "severity",
    ]);
    assert_eq!(bad_key.code, 2);
}

#[test]
fn compare_round_trip_is_zero_and_mismatch_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let findings = findings_file(dir.path(), "f.txt", &[("p/a.go", "cosmos/goroutine")]);
    let labels_path = dir.path().join("l.csv");
    std::fs::write(&labels_path, "fingerprint,label,canonical\nf0,TP\n").unwrap();
    let report = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
        "--json",
    ]);
    assert_eq!(report.code, 0);
    let report_path = dir.path().join("r.json");
    std::fs::write(&report_path, &report.stdout).unwrap();

    let same = chainlint(&[
        "compare",
        report_path.to_str().unwrap(),
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(same.code, 0);
    let totals = same.stdout.lines().find(|l| l.starts_with("TOTAL")).unwrap();
    assert!(totals.contains("0.00%"));

    // Different group sets are a fatal mismatch, and both sides are listed.
    let other = dir.path().join("other.json");
    std::fs::write(
        &other,
        report.stdout.replace("cosmos/goroutine", "cosmos/system-time"),
    )
    .unwrap();
    let mismatch = chainlint(&[
        "compare",
        report_path.to_str().unwrap(),
        other.to_str().unwrap(),
    ]);
    assert_eq!(mismatch.code, 3);
    assert!(mismatch.stderr.contains("cosmos/goroutine"));
    assert!(mismatch.stderr.contains("cosmos/system-time"));
}

#[test]
fn fp_only_gain_reports_full_precision_recovery() {
    let dir = tempfile::tempdir().unwrap();
    let findings = findings_file(dir.path(), "f.txt", &[("gaia/x/a.go", "cosmos/goroutine")]);
    let labels_path = dir.path().join("l.csv");
    std::fs::write(&labels_path, "fingerprint,label,canonical\nf0,FP\n").unwrap();
    let first = chainlint(&[
        "eval",
        "--findings",
        findings.to_str().unwrap(),
        "--labels",
        labels_path.to_str().unwrap(),
        "--group-by",
        "project",
        "--json",
    ]);
    assert_eq!(first.code, 0);
    let first_path = dir.path().join("first.json");
    std::fs::write(&first_path, &first.stdout).unwrap();

    // The second run cleared the project: a hand-written empty report.
    let empty = r#"{
      "group_by": "project",
      "groups": {
        "gaia": {"p": 0, "fp": 0, "tp": 0, "utp": 0, "precision": null, "nr": null, "unlabeled": 0}
      },
      "totals": {"p": 0, "fp": 0, "tp": 0, "utp": 0, "precision": null, "nr": null, "unlabeled": 0}
    }"#;
    let second_path = dir.path().join("second.json");
    std::fs::write(&second_path, empty).unwrap();

    let plain = chainlint(&[
        "compare",
        first_path.to_str().unwrap(),
        second_path.to_str().unwrap(),
    ]);
    assert_eq!(plain.code, 0);
    assert!(plain.stdout.contains("N/A"));

    let gain = chainlint(&[
        "compare",
        first_path.to_str().unwrap(),
        second_path.to_str().unwrap(),
        "--fp-only-gain",
    ]);
    assert_eq!(gain.code, 0);
    let row = gain.stdout.lines().find(|l| l.starts_with("gaia")).unwrap();
    assert!(row.contains("100.00%"), "row: {row}");
}
