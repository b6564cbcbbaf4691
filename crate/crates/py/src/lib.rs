//! Python bindings: a thin veneer over `chainlint-core`.
//!
//! The module mirrors the CLI's operations. [`analyze`] runs the full
//! pipeline and returns an [`Analysis`] whose findings, scope, and call graph
//! are plain Python objects; [`evaluate`] and [`compare_reports`] wrap the
//! metrics layer. Everything is converted eagerly, so no Go source or syntax
//! tree outlives the call.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use chainlint_core::config::{self, Overrides};
use chainlint_core::metrics::{
    self, compute_metrics, format_pct, GroupMetrics, Label, LabelSet, LabeledItem, MetricsReport,
    Rational,
};
use chainlint_core::report::{emit_sarif, emit_text};
use chainlint_core::rules::RuleId;
use chainlint_core::{driver, Error};

fn to_py(e: Error) -> PyErr {
    if e.is_usage() {
        PyValueError::new_err(e.to_string())
    } else {
        PyRuntimeError::new_err(e.to_string())
    }
}

// ---------------------------------------------------------------------------
// result objects
// ---------------------------------------------------------------------------

/// One determinism violation, already fingerprinted and suppression-resolved.
#[pyclass(frozen, get_all, skip_from_py_object, module = "chainlint")]
#[derive(Clone)]
pub struct Finding {
    pub rule: String,
    pub message: String,
    /// Root-relative file path.
    pub path: String,
    pub line: u32,
    pub col: u32,
    /// Import path of the containing package.
    pub import_path: String,
    /// Enclosing function or package-level declaration label.
    pub owner: String,
    pub fingerprint: String,
    /// Justification text when an in-source directive suppressed it.
    pub suppressed: Option<String>,
    /// Entry kinds whose closure contains the finding (whitelist mode).
    pub entry_kinds: Vec<String>,
    /// Entry-to-function call chain as `(callee, "path:line:col")` steps.
    pub witness: Vec<(String, String)>,
}

#[pymethods]
impl Finding {
    fn __repr__(&self) -> String {
        format!(
            "Finding({}:{}:{} {} {})",
            self.path, self.line, self.col, self.rule, self.fingerprint
        )
    }
}

/// One consensus-scope member.
#[pyclass(frozen, get_all, skip_from_py_object, module = "chainlint")]
#[derive(Clone)]
pub struct ScopeEntry {
    pub package: String,
    /// `Name` or `(Receiver).Name`.
    pub func: String,
    /// Which entry kinds reach it (empty in blacklist mode).
    pub entry_kinds: Vec<String>,
}

#[pymethods]
impl ScopeEntry {
    fn __repr__(&self) -> String {
        format!("ScopeEntry({}.{})", self.package, self.func)
    }
}

/// One call-graph edge.
#[pyclass(frozen, get_all, skip_from_py_object, module = "chainlint")]
#[derive(Clone)]
pub struct CallEdge {
    pub caller: String,
    /// `None` when the callee could not be resolved statically.
    pub callee: Option<String>,
    pub path: String,
    pub line: u32,
    /// `direct`, `interface`, or `unresolved`.
    pub resolution: String,
}

#[pymethods]
impl CallEdge {
    fn __repr__(&self) -> String {
        format!(
            "CallEdge({} -> {} [{}])",
            self.caller,
            self.callee.as_deref().unwrap_or("-"),
            self.resolution
        )
    }
}

/// Everything one [`analyze`] run produced.
#[pyclass(frozen, module = "chainlint")]
pub struct Analysis {
    /// `whitelist` or `blacklist`.
    #[pyo3(get)]
    pub mode: String,
    /// Sorted findings, suppressed ones included.
    #[pyo3(get)]
    pub findings: Vec<Finding>,
    /// Consensus scope, sorted by (package, function).
    #[pyo3(get)]
    pub scope: Vec<ScopeEntry>,
    /// Every call edge, resolved or not.
    #[pyo3(get)]
    pub edges: Vec<CallEdge>,
    /// Entry kind -> qualified entry functions.
    #[pyo3(get)]
    pub entries: BTreeMap<String, Vec<String>>,
    /// Parse and suppression-directive problems, as `path:line: message`.
    #[pyo3(get)]
    pub diagnostics: Vec<String>,
    text: String,
    sarif: String,
}

#[pymethods]
impl Analysis {
    /// Findings that count toward a failure policy.
    fn unsuppressed(&self) -> Vec<Finding> {
        self.findings
            .iter()
            .filter(|f| f.suppressed.is_none())
            .cloned()
            .collect()
    }

    /// The CLI's tab-separated text report.
    fn text(&self) -> String {
        self.text.clone()
    }

    /// The report as a SARIF 2.1.0 document.
    fn sarif(&self) -> String {
        self.sarif.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Analysis(mode={}, findings={}, scope={})",
            self.mode,
            self.findings.len(),
            self.scope.len()
        )
    }
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

/// Run the analyzer over a Go source tree.
///
/// Keyword arguments mirror the CLI flags; unset ones fall back to the
/// `.chainlint` file in `root` and then to built-in defaults.
#[pyfunction]
#[pyo3(signature = (root, *, config=None, mode=None, include=vec![], exclude=vec![],
                    rules=vec![], entry_methods=vec![], server_suffixes=vec![],
                    extra_entries=vec![], blacklist=vec![]))]
#[allow(clippy::too_many_arguments)]
fn analyze(
    root: &str,
    config: Option<String>,
    mode: Option<String>,
    include: Vec<String>,
    exclude: Vec<String>,
    rules: Vec<String>,
    entry_methods: Vec<String>,
    server_suffixes: Vec<String>,
    extra_entries: Vec<String>,
    blacklist: Vec<String>,
) -> PyResult<Analysis> {
    let ov = Overrides {
        config_path: config.map(Into::into),
        mode,
        include,
        exclude,
        entry_methods,
        server_suffixes,
        extra_entries,
        blacklist,
        rules_enabled: rules,
        output: None,
        baseline: None,
        fail_on: None,
    };
    let cfg = config::load(root.as_ref(), &ov).map_err(to_py)?;
    let analysis = driver::analyze(&cfg).map_err(to_py)?;

    let model = &analysis.model;
    let findings = analysis
        .findings
        .iter()
        .map(|f| Finding {
            rule: f.rule.name().to_string(),
            message: f.message.clone(),
            path: f.path.clone(),
            line: f.line,
            col: f.col,
            import_path: f.import_path.clone(),
            owner: f.owner.clone(),
            fingerprint: f.fingerprint.clone(),
            suppressed: f.suppressed.clone(),
            entry_kinds: f.entry_kinds.clone(),
            witness: f
                .witness
                .iter()
                .map(|w| (w.callee.clone(), format!("{}:{}:{}", w.path, w.line, w.col)))
                .collect(),
        })
        .collect();

    let scope = analysis
        .scope
        .members
        .iter()
        .map(|&id| {
            let fd = model.tree.func(id);
            let func = match &fd.receiver {
                Some(r) => format!("({r}).{}", fd.name),
                None => fd.name.clone(),
            };
            ScopeEntry {
                package: model.tree.package(fd.package).import_path.clone(),
                func,
                entry_kinds: analysis
                    .scope
                    .provenance
                    .get(&id)
                    .map(|kinds| kinds.iter().map(|k| k.to_string()).collect())
                    .unwrap_or_default(),
            }
        })
        .collect();

    let edges = analysis
        .graph
        .edges
        .iter()
        .map(|e| CallEdge {
            caller: model.tree.func_display(e.caller),
            callee: e.callee.map(|c| model.tree.func_display(c)),
            path: model.tree.file(e.file).path.clone(),
            line: e.line,
            resolution: e.resolution.name().to_string(),
        })
        .collect();

    let entries = analysis
        .entries
        .iter()
        .map(|(kind, funcs)| {
            (
                kind.to_string(),
                funcs.iter().map(|&f| model.tree.func_display(f)).collect(),
            )
        })
        .collect();

    let diagnostics = model
        .tree
        .diagnostics
        .iter()
        .map(|d| format!("{}:{}:{}: {}", d.path, d.line, d.col, d.message))
        .chain(
            analysis
                .directive_diagnostics
                .iter()
                .map(|d| format!("{}:{}: {}", d.path, d.line, d.message)),
        )
        .collect();

    Ok(Analysis {
        mode: match cfg.mode {
            chainlint_core::scope::ScopeMode::Whitelist => "whitelist".to_string(),
            chainlint_core::scope::ScopeMode::Blacklist => "blacklist".to_string(),
        },
        findings,
        scope,
        edges,
        entries,
        diagnostics,
        text: emit_text(&analysis.findings),
        sarif: emit_sarif(&analysis.findings),
    })
}

// ---------------------------------------------------------------------------
// metrics
// ---------------------------------------------------------------------------

/// Per-group evaluation counters. `precision` and `noise_ratio` are `None`
/// where the table prints N/A; the `_pct` strings match the table exactly.
#[pyclass(frozen, get_all, skip_from_py_object, module = "chainlint")]
#[derive(Clone)]
pub struct GroupStats {
    pub p: i64,
    pub fp: i64,
    pub tp: i64,
    pub utp: i64,
    pub precision: Option<f64>,
    pub noise_ratio: Option<f64>,
    pub precision_pct: String,
    pub noise_ratio_pct: String,
    pub unlabeled: i64,
}

fn approx(r: Option<Rational>) -> Option<f64> {
    r.map(|r| *r.numer() as f64 / *r.denom() as f64)
}

impl From<&GroupMetrics> for GroupStats {
    fn from(g: &GroupMetrics) -> Self {
        GroupStats {
            p: g.p,
            fp: g.fp,
            tp: g.tp,
            utp: g.utp,
            precision: approx(g.precision),
            noise_ratio: approx(g.nr),
            precision_pct: format_pct(g.precision),
            noise_ratio_pct: format_pct(g.nr),
            unlabeled: g.unlabeled,
        }
    }
}

/// An evaluated findings set.
#[pyclass(frozen, module = "chainlint")]
pub struct Metrics {
    /// `rule` or `project`.
    #[pyo3(get)]
    pub group_by: String,
    #[pyo3(get)]
    pub groups: BTreeMap<String, GroupStats>,
    #[pyo3(get)]
    pub totals: GroupStats,
    table: String,
    json: String,
}

#[pymethods]
impl Metrics {
    /// The CLI's aligned table rendering.
    fn table(&self) -> String {
        self.table.clone()
    }

    /// JSON document accepted by [`compare_reports`] and `chainlint compare`.
    fn json(&self) -> String {
        self.json.clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Metrics(group_by={}, groups={}, P={})",
            self.group_by,
            self.groups.len(),
            self.totals.p
        )
    }
}

fn parse_label(fingerprint: &str, verdict: &str) -> PyResult<Label> {
    match verdict {
        "TP" => Ok(Label::Tp),
        "FP" => Ok(Label::Fp),
        _ => match verdict.strip_prefix("DUP:") {
            Some(canonical) if !canonical.is_empty() => Ok(Label::Dup {
                canonical: canonical.to_string(),
            }),
            _ => Err(PyValueError::new_err(format!(
                "label for {fingerprint} must be TP, FP, or DUP:<canonical>, got {verdict:?}"
            ))),
        },
    }
}

/// Compute precision / noise-ratio statistics for labeled findings.
///
/// `items` are `(group, fingerprint)` pairs; `labels` maps fingerprints to
/// `"TP"`, `"FP"`, or `"DUP:<canonical fingerprint>"`.
#[pyfunction]
#[pyo3(signature = (items, labels, *, group_by="rule", allow_unlabeled=false))]
fn evaluate(
    items: Vec<(String, String)>,
    labels: BTreeMap<String, String>,
    group_by: &str,
    allow_unlabeled: bool,
) -> PyResult<Metrics> {
    let mut set = LabelSet::default();
    for (fp, verdict) in &labels {
        set.insert(fp.clone(), parse_label(fp, verdict)?)
            .map_err(to_py)?;
    }
    let items: Vec<LabeledItem> = items
        .into_iter()
        .map(|(group, fingerprint)| LabeledItem { group, fingerprint })
        .collect();
    let report = compute_metrics(&items, &set, group_by, allow_unlabeled).map_err(to_py)?;
    Ok(to_metrics(&report))
}

fn to_metrics(report: &MetricsReport) -> Metrics {
    Metrics {
        group_by: report.group_by.clone(),
        groups: report
            .groups
            .iter()
            .map(|(name, g)| (name.clone(), GroupStats::from(g)))
            .collect(),
        totals: GroupStats::from(&report.totals),
        table: metrics::render_metrics(report),
        json: serde_json::to_string_pretty(report).expect("report serializes"),
    }
}

/// Compare two metrics reports (the JSON form from [`Metrics::json`]) and
/// return the rendered delta table. Group sets must match.
#[pyfunction]
#[pyo3(signature = (first_json, second_json, *, fp_only_gain=false))]
fn compare_reports(first_json: &str, second_json: &str, fp_only_gain: bool) -> PyResult<String> {
    let read = |text: &str| -> PyResult<MetricsReport> {
        serde_json::from_str(text)
            .map_err(|e| PyValueError::new_err(format!("bad metrics report: {e}")))
    };
    let cmp = metrics::compare(&read(first_json)?, &read(second_json)?, fp_only_gain)
        .map_err(to_py)?;
    Ok(metrics::render_comparison(&cmp))
}

// ---------------------------------------------------------------------------
// module
// ---------------------------------------------------------------------------

#[pymodule]
fn chainlint(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add(
        "RULES",
        RuleId::ALL.iter().map(|r| r.name()).collect::<Vec<_>>(),
    )?;
    m.add_class::<Finding>()?;
    m.add_class::<ScopeEntry>()?;
    m.add_class::<CallEdge>()?;
    m.add_class::<Analysis>()?;
    m.add_class::<GroupStats>()?;
    m.add_class::<Metrics>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(compare_reports, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Drive the module through an embedded interpreter: import it, analyze
    /// the bundled clean fixture, evaluate a labeled set, and check that the
    /// values crossing the boundary are real Python objects.
    ///
    /// Kept as a single test so `append_to_inittab!` runs before anything
    /// initializes the interpreter.
    #[test]
    fn module_works_under_an_embedded_interpreter() {
        pyo3::append_to_inittab!(chainlint);
        Python::initialize();
        Python::attach(|py| {
            let m = py.import("chainlint").expect("module imports");
            let rules: Vec<String> = m.getattr("RULES").unwrap().extract().unwrap();
            assert_eq!(rules.len(), 8);
            assert!(rules.contains(&"cosmos/block-panic".to_string()));

            let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/minimod");
            let analysis = m.getattr("analyze").unwrap().call1((root,)).unwrap();
            assert_eq!(
                analysis.getattr("mode").unwrap().extract::<String>().unwrap(),
                "whitelist"
            );
            assert_eq!(analysis.getattr("findings").unwrap().len().unwrap(), 0);
            assert_eq!(analysis.getattr("scope").unwrap().len().unwrap(), 6);
            let entry = analysis
                .getattr("scope")
                .unwrap()
                .get_item(0)
                .unwrap();
            assert_eq!(
                entry.getattr("package").unwrap().extract::<String>().unwrap(),
                "example.com/minichain/x/token/keeper"
            );

            let items = vec![
                ("rule".to_string(), "a".to_string()),
                ("rule".to_string(), "b".to_string()),
            ];
            let labels: BTreeMap<String, String> = [("a", "TP"), ("b", "FP")]
                .into_iter()
                .map(|(k, v)| (k.to_string(), v.to_string()))
                .collect();
            let metrics = m.getattr("evaluate").unwrap().call1((items, labels)).unwrap();
            let totals = metrics.getattr("totals").unwrap();
            assert_eq!(totals.getattr("p").unwrap().extract::<i64>().unwrap(), 2);
            assert_eq!(
                totals
                    .getattr("precision_pct")
                    .unwrap()
                    .extract::<String>()
                    .unwrap(),
                "50.00%"
            );

            // Errors surface as ordinary Python exceptions.
            let err = m
                .getattr("analyze")
                .unwrap()
                .call1(("/nonexistent/tree",))
                .unwrap_err();
            assert!(err.is_instance_of::<PyValueError>(py));
        });
    }
}
