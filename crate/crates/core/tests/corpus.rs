//! The planted corpus under `fixtures/corpus` analyzes to exactly its
//! `// want` markers in whitelist mode, and blacklist mode adds the
//! false positives the marker-free decoy packages carry.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use chainlint_core::config::{load, Overrides};
use chainlint_core::driver::{analyze, Analysis};

use common::fixture;

type Key = (String, u32, String);

fn corpus() -> std::path::PathBuf {
    fixture("corpus")
}

fn run(root: &Path, mode: &str) -> Analysis {
    let cfg = load(
        root,
        &Overrides {
            mode: Some(mode.into()),
            ..Default::default()
        },
    )
    .unwrap();
    analyze(&cfg).unwrap()
}

fn markers(root: &Path, token: &str) -> BTreeMap<Key, usize> {
    let mut out = BTreeMap::new();
    for entry in walkdir::WalkDir::new(root) {
        let entry = entry.unwrap();
        let p = entry.path();
        if p.extension().and_then(|e| e.to_str()) != Some("go") {
            continue;
        }
        let rel = p
            .strip_prefix(root)
            .unwrap()
            .to_string_lossy()
            .replace('\\', "/");
        let text = std::fs::read_to_string(p).unwrap();
        for (i, line) in text.lines().enumerate() {
            let Some(pos) = line.find(token) else { continue };
            for spec in line[pos + token.len()..].split_whitespace() {
                if !spec.starts_with("cosmos/") {
                    break;
                }
                let (rule, count) = match spec.trim_end_matches(':').split_once('*') {
                    Some((r, n)) => (r.to_string(), n.trim_end_matches(':').parse().unwrap()),
                    None => (spec.trim_end_matches(':').to_string(), 1),
                };
                *out.entry((rel.clone(), i as u32 + 1, rule)).or_insert(0) += count;
            }
        }
    }
    out
}

fn finding_counts(a: &Analysis) -> BTreeMap<Key, usize> {
    let mut out = BTreeMap::new();
    for f in &a.findings {
        *out.entry((f.path.clone(), f.line, f.rule.name().to_string()))
            .or_insert(0) += 1;
    }
    out
}

#[test]
fn whitelist_reports_exactly_the_planted_findings() {
    let root = corpus();
    let want = markers(&root, "// want ");
    let got = finding_counts(&run(&root, "whitelist"));
    let missing: Vec<&Key> = want.keys().filter(|k| !got.contains_key(*k)).collect();
    let spurious: Vec<&Key> = got.keys().filter(|k| !want.contains_key(*k)).collect();
    assert!(
        want == got,
        "corpus diverges\n  missing ({}): {missing:#?}\n  spurious ({}): {spurious:#?}",
        missing.len(),
        spurious.len()
    );
}

#[test]
fn corpus_is_large_and_balanced() {
    let root = corpus();
    let mut packages: BTreeSet<String> = BTreeSet::new();
    for entry in walkdir::WalkDir::new(&root) {
        let p = entry.unwrap().into_path();
        if p.extension().and_then(|e| e.to_str()) == Some("go") {
            packages.insert(p.parent().unwrap().to_string_lossy().into_owned());
        }
    }
    assert!(packages.len() >= 30, "only {} packages", packages.len());

    let want = markers(&root, "// want ");
    let decoys = markers(&root, "// decoy ");
    for rule in [
        "cosmos/block-panic",
        "cosmos/map-iteration",
        "cosmos/hardcoded-bech32",
        "cosmos/goroutine",
        "cosmos/float-arith",
        "cosmos/system-time",
        "cosmos/unsafe-package",
        "cosmos/platform-int",
    ] {
        let tp: usize = want.iter().filter(|((_, _, r), _)| r == rule).map(|(_, c)| c).sum();
        let dc = decoys.iter().filter(|((_, _, r), _)| r == rule).count();
        assert!(tp >= 3, "{rule}: only {tp} planted findings");
        assert!(dc >= 3, "{rule}: only {dc} decoys");
    }
}

#[test]
fn blacklist_adds_false_positives_and_keeps_every_true_positive() {
    let root = corpus();
    let white = finding_counts(&run(&root, "whitelist"));
    let black = finding_counts(&run(&root, "blacklist"));

    for (k, n) in &white {
        assert!(
            black.get(k) >= Some(n),
            "whitelist finding lost in blacklist mode: {k:?}"
        );
    }
    let extra: usize = black
        .iter()
        .map(|(k, n)| n - white.get(k).copied().unwrap_or(0))
        .sum();
    assert!(extra >= 10, "blacklist mode only adds {extra} findings");

    // The additions all live in packages the whitelist proves unreachable.
    let fp_files: BTreeSet<&str> = black
        .keys()
        .filter(|k| !white.contains_key(*k))
        .map(|(p, _, _)| p.as_str())
        .collect();
    for f in &fp_files {
        assert!(
            !f.starts_with("x/") || f.contains("/internal/") || f.contains("/exporter/"),
            "unexpected blacklist-only finding location: {f}"
        );
    }
}
