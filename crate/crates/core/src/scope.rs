//! Consensus-critical scope computation.
//!
//! Whitelist mode (the interesting one): find ABCI entry points and take the
//! call-graph closure. Legacy blacklist mode (kept for comparison runs):
//! everything except test files and packages whose import path matches a
//! deny pattern.
//!
//! `DeliverTx` surrogate: applications do not declare DeliverTx themselves;
//! transaction logic lives in message-server implementations. The entry set
//! is therefore: for every in-tree interface whose name ends with a
//! configured suffix (default `MsgServer`), the interface's methods on every
//! in-tree type whose method set satisfies it. This is an interpretation, and
//! it is configurable.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::callgraph::{reachable_from, CallGraph};
use crate::source::{FuncId, NamedKind, SourceModel};
use crate::Result;

/// Names that are never entry points unless explicitly requested: the paper's
/// whitelist deliberately leaves chain initialization and store commitment
/// out of consensus-critical scope.
const EXCLUDED_ENTRY_NAMES: &[&str] = &["Commit", "InitChain"];

/// How an entry point was classified.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum EntryKind {
    BeginBlock,
    EndBlock,
    DeliverTx,
    Extra(String),
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EntryKind::BeginBlock => f.write_str("BeginBlock"),
            EntryKind::EndBlock => f.write_str("EndBlock"),
            EntryKind::DeliverTx => f.write_str("DeliverTx"),
            EntryKind::Extra(name) => f.write_str(name),
        }
    }
}

/// A method-name pattern: exact (`BeginBlock`) or suffix (`*Block`), with an
/// optional arity constraint (`BeginBlock@2` in config syntax).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamePattern {
    pub name: String,
    pub suffix: bool,
    pub arity: Option<usize>,
}

impl NamePattern {
    pub fn exact(name: &str) -> Self {
        NamePattern {
            name: name.to_string(),
            suffix: false,
            arity: None,
        }
    }

    /// Parse config syntax: leading `*` means suffix match, a trailing `@N`
    /// constrains arity.
    pub fn parse(s: &str) -> crate::Result<Self> {
        let (body, arity) = match s.rsplit_once('@') {
            Some((body, a)) => {
                let n = a.parse::<usize>().map_err(|_| {
                    crate::Error::Config(format!("bad arity in entry pattern `{s}`"))
                })?;
                (body, Some(n))
            }
            None => (s, None),
        };
        let (name, suffix) = match body.strip_prefix('*') {
            Some(rest) => (rest, true),
            None => (body, false),
        };
        if name.is_empty() {
            return Err(crate::Error::Config(format!("empty entry pattern `{s}`")));
        }
        Ok(NamePattern {
            name: name.to_string(),
            suffix,
            arity,
        })
    }

    fn matches(&self, name: &str, arity: usize) -> bool {
        let name_ok = if self.suffix {
            name.ends_with(&self.name)
        } else {
            name == self.name
        };
        name_ok && self.arity.map_or(true, |a| a == arity)
    }
}

/// Entry-point discovery parameters.
#[derive(Clone, Debug)]
pub struct EntryPointSpec {
    /// Method names treated as block-lifecycle entries.
    pub method_names: Vec<NamePattern>,
    /// Interface-name suffixes identifying message servers.
    pub server_suffixes: Vec<String>,
    /// Extra exact names (functions or methods) admitted as entries; the only
    /// way `InitChain`/`Commit` can become entries.
    pub extra_entry_names: Vec<String>,
}

impl Default for EntryPointSpec {
    fn default() -> Self {
        EntryPointSpec {
            method_names: vec![NamePattern::exact("BeginBlock"), NamePattern::exact("EndBlock")],
            server_suffixes: vec!["MsgServer".to_string()],
            extra_entry_names: Vec::new(),
        }
    }
}

/// Scope strategy.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum ScopeMode {
    Whitelist,
    Blacklist,
}

/// The consensus-critical function set plus provenance.
#[derive(Clone, Debug)]
pub struct ScopeSet {
    pub mode: ScopeMode,
    pub members: BTreeSet<FuncId>,
    /// Whitelist mode only: which entry kinds reach each member.
    pub provenance: BTreeMap<FuncId, BTreeSet<EntryKind>>,
}

impl ScopeSet {
    pub fn contains(&self, f: FuncId) -> bool {
        self.members.contains(&f)
    }
}

/// Discover entry points per kind.
///
/// Block-lifecycle entries must be methods (a bare function named BeginBlock
/// is not an ABCI handler); extra entries may be either. Test-file
/// declarations never become entries. `InitChain` and `Commit` are excluded
/// everywhere unless listed in `extra_entry_names`.
pub fn find_entry_points(
    model: &SourceModel,
    spec: &EntryPointSpec,
) -> BTreeMap<EntryKind, BTreeSet<FuncId>> {
    let mut out: BTreeMap<EntryKind, BTreeSet<FuncId>> = BTreeMap::new();
    let tree = &model.tree;

    let excluded = |name: &str| {
        EXCLUDED_ENTRY_NAMES.contains(&name)
            && !spec.extra_entry_names.iter().any(|e| e == name)
    };

    // Block-lifecycle methods.
    for f in tree.func_ids() {
        let fd = tree.func(f);
        if fd.is_test_file || fd.receiver.is_none() || excluded(&fd.name) {
            continue;
        }
        let arity = model.sigs[f.0 as usize].arity();
        for pat in &spec.method_names {
            if pat.matches(&fd.name, arity) {
                let kind = match fd.name.as_str() {
                    "BeginBlock" => EntryKind::BeginBlock,
                    "EndBlock" => EntryKind::EndBlock,
                    other => EntryKind::Extra(other.to_string()),
                };
                out.entry(kind).or_default().insert(f);
                break;
            }
        }
    }

    // DeliverTx surrogate: message-server interface implementations.
    for ((iface_pkg, iface_name), info) in &model.named {
        if info.is_test {
            continue;
        }
        let NamedKind::Interface { methods } = &info.kind else {
            continue;
        };
        if methods.is_empty() {
            continue;
        }
        if !spec
            .server_suffixes
            .iter()
            .any(|s| iface_name.ends_with(s.as_str()))
        {
            continue;
        }
        let _ = iface_pkg;
        for ((type_pkg, base), mset) in &model.method_sets {
            let satisfies = methods.iter().all(|req| mset.binary_search(req).is_ok());
            if !satisfies {
                continue;
            }
            for (mname, _) in methods {
                if excluded(mname) {
                    continue;
                }
                if let Some(&f) = model
                    .methods
                    .get(&(*type_pkg, base.clone(), mname.clone()))
                {
                    out.entry(EntryKind::DeliverTx).or_default().insert(f);
                }
            }
        }
    }

    // Extra exact names (functions or methods).
    for name in &spec.extra_entry_names {
        for f in tree.func_ids() {
            let fd = tree.func(f);
            if !fd.is_test_file && fd.name == *name {
                out.entry(EntryKind::Extra(name.clone())).or_default().insert(f);
            }
        }
    }

    out.retain(|_, set| !set.is_empty());
    out
}

/// Whitelist scope: union of call-graph closures per entry kind, with
/// provenance recording every kind that reaches each member.
pub fn compute_scope(
    graph: &CallGraph,
    entries: &BTreeMap<EntryKind, BTreeSet<FuncId>>,
) -> Result<ScopeSet> {
    let mut members = BTreeSet::new();
    let mut provenance: BTreeMap<FuncId, BTreeSet<EntryKind>> = BTreeMap::new();
    for (kind, seeds) in entries {
        let reached = reachable_from(graph, seeds)?;
        for f in reached {
            members.insert(f);
            provenance.entry(f).or_default().insert(kind.clone());
        }
    }
    Ok(ScopeSet {
        mode: ScopeMode::Whitelist,
        members,
        provenance,
    })
}

/// Legacy blacklist scope: every non-test function whose package import path
/// contains none of the given substrings.
pub fn legacy_blacklist_scope(model: &SourceModel, patterns: &[String]) -> ScopeSet {
    let tree = &model.tree;
    let mut members = BTreeSet::new();
    for f in tree.func_ids() {
        let fd = tree.func(f);
        if fd.is_test_file {
            continue;
        }
        let pkg = tree.package(fd.package);
        if pkg.is_test {
            continue;
        }
        if patterns.iter().any(|p| pkg.import_path.contains(p.as_str())) {
            continue;
        }
        members.insert(f);
    }
    ScopeSet {
        mode: ScopeMode::Blacklist,
        members,
        provenance: BTreeMap::new(),
    }
}

/// Default legacy blacklist, documented as a reconstruction: the original
/// lists varied query to query.
pub fn default_blacklist() -> Vec<String> {
    ["mock", "test", "simulation", "cli", "client"]
        .iter()
        .map(|s| s.to_string())
        .collect()
}

/// `scope` subcommand body: sorted `importPath<TAB>func<TAB>kinds` lines.
pub fn dump_scope(model: &SourceModel, scope: &ScopeSet) -> String {
    let mut lines: Vec<String> = scope
        .members
        .iter()
        .map(|&f| {
            let fd = model.tree.func(f);
            let pkg = &model.tree.package(fd.package).import_path;
            let name = match &fd.receiver {
                Some(r) => format!("({r}).{}", fd.name),
                None => fd.name.clone(),
            };
            let kinds = scope
                .provenance
                .get(&f)
                .map(|ks| {
                    ks.iter()
                        .map(|k| k.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                })
                .unwrap_or_default();
            format!("{pkg}\t{name}\t{kinds}")
        })
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}
