//! Finding enrichment and emission: stable fingerprints, in-source
//! suppressions, the line-oriented text format, SARIF 2.1.0, and baseline
//! files.

use std::collections::BTreeSet;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::rules::{RawFinding, RuleId};
use crate::source::SourceModel;
use crate::{Error, Result};

/// A reportable finding. Everything downstream (emitters, baselines, the
/// metrics pipeline) reads this shape; nothing holds model indices.
#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub rule: RuleId,
    pub message: String,
    /// Root-relative file path.
    pub path: String,
    pub line: u32,
    pub col: u32,
    pub byte_range: (u32, u32),
    /// Import path of the containing package.
    pub import_path: String,
    /// Enclosing function or package-level declaration label.
    pub owner: String,
    pub fingerprint: String,
    /// Justification when suppressed in source.
    pub suppressed: Option<String>,
    /// Entry-to-function call chain for reachability findings.
    pub witness: Vec<WitnessStep>,
    pub entry_kinds: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessStep {
    /// `importPath.Func` form of the callee entered.
    pub callee: String,
    /// Call-site position.
    pub path: String,
    pub line: u32,
    pub col: u32,
}

/// Compute the location-robust digest of a raw finding: a pure function of
/// the rule, the package import path, the owner label, and the node-kind path
/// (with same-kind ordinals) from the owner declaration to the flagged node.
/// Line numbers, file names, and sibling files never participate.
pub fn fingerprint(model: &SourceModel, raw: &RawFinding) -> String {
    let file = model.tree.file(raw.file);
    let import_path = &model.tree.package(file.package).import_path;

    // Walk up from the flagged node to the owner, recording kind + ordinal.
    let mut steps: Vec<String> = Vec::new();
    let mut cur = raw.node;
    while cur != raw.owner_node {
        let n = file.node(cur);
        let ordinal = match n.parent {
            Some(p) => file
                .children(p)
                .filter(|&c| file.node(c).kind == n.kind)
                .position(|c| c == cur)
                .unwrap_or(0),
            None => 0,
        };
        steps.push(format!("{}[{}]", n.kind.name(), ordinal));
        match n.parent {
            Some(p) => cur = p,
            None => break,
        }
    }
    steps.reverse();

    let mut h = Sha256::new();
    h.update(raw.rule.name().as_bytes());
    h.update([0]);
    h.update(import_path.as_bytes());
    h.update([0]);
    h.update(raw.owner_label.as_bytes());
    h.update([0]);
    h.update(steps.join("/").as_bytes());
    hex::encode(&h.finalize()[..8])
}

/// Enrich raw findings into reportable ones. Input order is preserved.
pub fn enrich(model: &SourceModel, raw: &[RawFinding]) -> Vec<Finding> {
    raw.iter()
        .map(|r| {
            let file = model.tree.file(r.file);
            Finding {
                rule: r.rule,
                message: r.message.clone(),
                path: file.path.clone(),
                line: r.line,
                col: r.col,
                byte_range: r.byte_range,
                import_path: model.tree.package(file.package).import_path.clone(),
                owner: r.owner_label.clone(),
                fingerprint: fingerprint(model, r),
                suppressed: None,
                witness: r
                    .witness
                    .iter()
                    .flatten()
                    .map(|step| WitnessStep {
                        callee: model.tree.func_display(step.callee),
                        path: model.tree.file(step.file).path.clone(),
                        line: step.line,
                        col: step.col,
                    })
                    .collect(),
                entry_kinds: r.entry_kinds.iter().map(|k| k.to_string()).collect(),
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// Suppressions
// ---------------------------------------------------------------------------

/// The comment token opening a suppression directive.
pub const SUPPRESS_TOKEN: &str = "//consensus:ignore";

/// A malformed-directive report (the directive itself is then ignored).
#[derive(Clone, Debug, Serialize)]
pub struct DirectiveDiagnostic {
    pub path: String,
    pub line: u32,
    pub message: String,
}

struct Directive {
    rule: RuleId,
    justification: String,
    /// Line the directive occupies and the line it covers below it.
    lines: [u32; 2],
}

/// Mark findings suppressed when their flagged line (or the line above it)
/// carries `//consensus:ignore <rule-name> <justification>`. Counts never
/// change; only the suppression status does. Malformed directives yield a
/// diagnostic and suppress nothing.
pub fn apply_suppressions(
    model: &SourceModel,
    findings: &mut [Finding],
) -> Vec<DirectiveDiagnostic> {
    let mut diags = Vec::new();
    let mut directives: Vec<(String, Directive)> = Vec::new(); // (path, directive)

    for file in &model.tree.files {
        for c in &file.comments {
            let text = &file.text[c.start as usize..c.end as usize];
            let Some(rest) = text.strip_prefix(SUPPRESS_TOKEN) else {
                continue;
            };
            let mut words = rest.split_whitespace();
            let Some(rule_name) = words.next() else {
                diags.push(DirectiveDiagnostic {
                    path: file.path.clone(),
                    line: c.line,
                    message: "suppression directive is missing a rule name".to_string(),
                });
                continue;
            };
            let Some(rule) = RuleId::from_name(rule_name) else {
                diags.push(DirectiveDiagnostic {
                    path: file.path.clone(),
                    line: c.line,
                    message: format!("suppression directive names unknown rule `{rule_name}`"),
                });
                continue;
            };
            let justification = words.collect::<Vec<_>>().join(" ");
            if justification.is_empty() {
                diags.push(DirectiveDiagnostic {
                    path: file.path.clone(),
                    line: c.line,
                    message: format!(
                        "suppression of {rule_name} has no justification; directive ignored"
                    ),
                });
                continue;
            }
            directives.push((
                file.path.clone(),
                Directive {
                    rule,
                    justification,
                    lines: [c.line, c.end_line + 1],
                },
            ));
        }
    }

    for f in findings.iter_mut() {
        for (path, d) in &directives {
            if d.rule == f.rule && *path == f.path && d.lines.contains(&f.line) {
                f.suppressed = Some(d.justification.clone());
                break;
            }
        }
    }
    diags
}

// ---------------------------------------------------------------------------
// Text emission
// ---------------------------------------------------------------------------

/// Line-oriented report: `file:line:col<TAB>rule<TAB>message<TAB>fingerprint`,
/// in the detector output order (file, line, column, rule). Suppressed
/// findings stay listed, with the justification folded into the message
/// field.
pub fn emit_text(findings: &[Finding]) -> String {
    let mut out = String::new();
    for f in findings {
        let message = match &f.suppressed {
            Some(why) => format!("{} (suppressed: {why})", f.message),
            None => f.message.clone(),
        };
        out.push_str(&format!(
            "{}:{}:{}\t{}\t{}\t{}\n",
            f.path,
            f.line,
            f.col,
            f.rule.name(),
            message,
            f.fingerprint
        ));
    }
    out
}

// ---------------------------------------------------------------------------
// SARIF emission
// ---------------------------------------------------------------------------

/// SARIF 2.1.0 document. Deterministic: object keys serialize sorted, no
/// timestamps, and all paths are analysis-root-relative.
pub fn emit_sarif(findings: &[Finding]) -> String {
    use serde_json::{json, Value};

    let rules: Vec<Value> = RuleId::ALL
        .iter()
        .map(|r| {
            json!({
                "id": r.name(),
                "shortDescription": { "text": r.description() },
                "defaultConfiguration": { "level": "warning" },
            })
        })
        .collect();
    let rule_index = |r: RuleId| RuleId::ALL.iter().position(|x| *x == r).unwrap();

    let results: Vec<Value> = findings
        .iter()
        .map(|f| {
            let mut result = json!({
                "ruleId": f.rule.name(),
                "ruleIndex": rule_index(f.rule),
                "level": "warning",
                "message": { "text": f.message },
                "locations": [{
                    "physicalLocation": {
                        "artifactLocation": { "uri": f.path },
                        "region": { "startLine": f.line, "startColumn": f.col },
                    },
                    "logicalLocations": [{ "fullyQualifiedName": format!("{}.{}", f.import_path, f.owner) }],
                }],
                "partialFingerprints": { "chainlintFingerprint/v1": f.fingerprint },
            });
            let obj = result.as_object_mut().unwrap();
            if let Some(why) = &f.suppressed {
                obj.insert(
                    "suppressions".to_string(),
                    json!([{ "kind": "inSource", "justification": why }]),
                );
            }
            if !f.witness.is_empty() {
                let related: Vec<Value> = f
                    .witness
                    .iter()
                    .enumerate()
                    .map(|(i, s)| {
                        json!({
                            "physicalLocation": {
                                "artifactLocation": { "uri": s.path },
                                "region": { "startLine": s.line, "startColumn": s.col },
                            },
                            "message": { "text": format!("witness step {}: call into {}", i + 1, s.callee) },
                        })
                    })
                    .collect();
                obj.insert("relatedLocations".to_string(), Value::Array(related));
            }
            if !f.entry_kinds.is_empty() {
                obj.insert(
                    "properties".to_string(),
                    json!({ "entryKinds": f.entry_kinds }),
                );
            }
            result
        })
        .collect();

    let doc = json!({
        "$schema": "https://json.schemastore.org/sarif-2.1.0.json",
        "version": "2.1.0",
        "runs": [{
            "tool": {
                "driver": {
                    "name": "chainlint",
                    "semanticVersion": env!("CARGO_PKG_VERSION"),
                    "rules": rules,
                }
            },
            "columnKind": "unicodeCodePoints",
            "results": results,
        }],
    });
    let mut text = serde_json::to_string_pretty(&doc).expect("static JSON shape");
    text.push('\n');
    text
}

// ---------------------------------------------------------------------------
// Baselines
// ---------------------------------------------------------------------------

/// Parse a baseline file: newline-separated fingerprints, `#` comments and
/// blank lines allowed.
pub fn parse_baseline(text: &str) -> BTreeSet<String> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// Render the baseline for the given findings (suppressed ones included:
/// a baseline freezes the full report).
pub fn write_baseline(findings: &[Finding]) -> String {
    let mut fps: Vec<&str> = findings.iter().map(|f| f.fingerprint.as_str()).collect();
    fps.sort_unstable();
    fps.dedup();
    let mut out = String::from("# chainlint baseline: one finding fingerprint per line\n");
    for fp in fps {
        out.push_str(fp);
        out.push('\n');
    }
    out
}

/// Split findings against a baseline: `new` = findings whose fingerprint is
/// absent from the baseline; `fixed` = baseline entries matching no finding.
pub fn diff_baseline<'f>(
    findings: &'f [Finding],
    baseline: &BTreeSet<String>,
) -> (Vec<&'f Finding>, Vec<String>) {
    let current: BTreeSet<&str> = findings.iter().map(|f| f.fingerprint.as_str()).collect();
    let new: Vec<&Finding> = findings
        .iter()
        .filter(|f| !baseline.contains(&f.fingerprint))
        .collect();
    let fixed: Vec<String> = baseline
        .iter()
        .filter(|fp| !current.contains(fp.as_str()))
        .cloned()
        .collect();
    (new, fixed)
}

/// Read a baseline file from disk; unreadable files are fatal.
pub fn load_baseline(path: &std::path::Path) -> Result<BTreeSet<String>> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Error::Analysis(format!("cannot read baseline {}: {e}", path.display()))
    })?;
    Ok(parse_baseline(&text))
}
