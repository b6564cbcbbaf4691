//! The analysis pipeline: parse → bind → graph → scope → rules →
//! fingerprints → suppressions.

use std::collections::{BTreeMap, BTreeSet};

use crate::callgraph::{build_call_graph, CallGraph};
use crate::config::RunConfig;
use crate::report::{apply_suppressions, enrich, DirectiveDiagnostic, Finding};
use crate::rules::run_all;
use crate::scope::{
    compute_scope, find_entry_points, legacy_blacklist_scope, EntryKind, ScopeMode, ScopeSet,
};
use crate::source::{bind_types, parse_tree, FuncId, SourceModel};
use crate::Result;

/// Everything one run produces. The model and graph stay available for
/// dumps and for embedding callers.
pub struct Analysis {
    pub model: SourceModel,
    pub graph: CallGraph,
    pub entries: BTreeMap<EntryKind, BTreeSet<FuncId>>,
    pub scope: ScopeSet,
    /// Sorted findings, fingerprinted, suppression status resolved.
    pub findings: Vec<Finding>,
    pub directive_diagnostics: Vec<DirectiveDiagnostic>,
}

impl Analysis {
    /// Findings that count toward the failure policy.
    pub fn unsuppressed(&self) -> impl Iterator<Item = &Finding> {
        self.findings.iter().filter(|f| f.suppressed.is_none())
    }
}

/// Run the full pipeline for a resolved configuration.
///
/// Entry points are discovered in both modes: the blacklist strategy does not
/// use them for scoping, but the block-panic rule is reachability-based by
/// definition and needs them regardless.
pub fn analyze(cfg: &RunConfig) -> Result<Analysis> {
    let tree = parse_tree(&cfg.root, &cfg.include, &cfg.exclude)?;
    let model = bind_types(tree);
    let graph = build_call_graph(&model);
    let entries = find_entry_points(&model, &cfg.entries);
    let scope = match cfg.mode {
        ScopeMode::Whitelist => compute_scope(&graph, &entries)?,
        ScopeMode::Blacklist => legacy_blacklist_scope(&model, &cfg.blacklist),
    };
    let raw = run_all(&model, &graph, &scope, &entries, &cfg.rules);
    let mut findings = enrich(&model, &raw);
    let directive_diagnostics = apply_suppressions(&model, &mut findings);
    Ok(Analysis {
        model,
        graph,
        entries,
        scope,
        findings,
        directive_diagnostics,
    })
}
