//! The eight non-determinism detectors.
//!
//! Every detector is a pure function over the bound model and emits findings
//! only for code inside the supplied scope. Rule 1 is the exception in shape:
//! it is driven by reachability from block-lifecycle entry points (a panic is
//! only chain-halting where there is no transaction to abort), intersected
//! with the scope so the gating invariant holds in both modes.

mod bech32;

pub use bech32::is_valid_bech32;

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::callgraph::{reachable_from, shortest_witness_path, CallGraph, PathStep};
use crate::scope::{EntryKind, ScopeSet};
use crate::source::{
    literal_text, Classification, FileId, FuncDecl, FuncId, NodeId, NodeKind, NodeRef, SourceModel,
};

/// Identity of a detector. Ordering is the rule-table order and is part of
/// the output sort key.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum RuleId {
    BlockPanic,
    MapIteration,
    HardcodedBech32,
    Goroutine,
    FloatArithmetic,
    SystemTime,
    UnsafePackage,
    PlatformDependentType,
}

impl RuleId {
    pub const ALL: [RuleId; 8] = [
        RuleId::BlockPanic,
        RuleId::MapIteration,
        RuleId::HardcodedBech32,
        RuleId::Goroutine,
        RuleId::FloatArithmetic,
        RuleId::SystemTime,
        RuleId::UnsafePackage,
        RuleId::PlatformDependentType,
    ];

    /// Stable name used in output, config, and suppression directives.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::BlockPanic => "cosmos/block-panic",
            RuleId::MapIteration => "cosmos/map-iteration",
            RuleId::HardcodedBech32 => "cosmos/hardcoded-bech32",
            RuleId::Goroutine => "cosmos/goroutine",
            RuleId::FloatArithmetic => "cosmos/float-arith",
            RuleId::SystemTime => "cosmos/system-time",
            RuleId::UnsafePackage => "cosmos/unsafe-package",
            RuleId::PlatformDependentType => "cosmos/platform-int",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == s)
    }

    /// One-line description for report rule descriptors.
    pub fn description(self) -> &'static str {
        match self {
            RuleId::BlockPanic => {
                "a panic reachable from block-lifecycle entry points halts every node"
            }
            RuleId::MapIteration => "map iteration order is randomized per process",
            RuleId::HardcodedBech32 => {
                "hardcoded Bech32 addresses and prefixes break on chains with other prefixes"
            }
            RuleId::Goroutine => "goroutine scheduling and select choice are not replicated",
            RuleId::FloatArithmetic => {
                "floating-point results vary across architectures and compilers"
            }
            RuleId::SystemTime => "node wall clocks are never synchronized",
            RuleId::UnsafePackage => {
                "rand, reflect, unsafe and runtime introduce process-local behavior"
            }
            RuleId::PlatformDependentType => {
                "int, uint and uintptr widths differ between architectures"
            }
        }
    }
}

/// Detector configuration. Lists must be non-empty while the corresponding
/// rule is enabled (enforced at config validation).
#[derive(Clone, Debug)]
pub struct RuleConfig {
    pub enabled: BTreeSet<RuleId>,
    /// Qualified names whose calls read the wall clock.
    pub time_deny: Vec<String>,
    /// Import paths whose every use-site is non-deterministic.
    pub unsafe_packages: Vec<String>,
    /// Callee names whose string arguments are address-prefix sinks.
    pub bech32_setters: Vec<String>,
}

impl Default for RuleConfig {
    fn default() -> Self {
        RuleConfig {
            enabled: RuleId::ALL.into_iter().collect(),
            time_deny: [
                "time.Now",
                "time.Since",
                "time.Until",
                "time.After",
                "time.Tick",
                "time.NewTicker",
                "time.NewTimer",
            ]
            .map(String::from)
            .to_vec(),
            // `crypto/rand` stays off the list: it is drawn for key material,
            // not consensus values, and flagging it drowns real findings.
            unsafe_packages: ["math/rand", "reflect", "unsafe", "runtime"]
                .map(String::from)
                .to_vec(),
            bech32_setters: [
                "SetBech32PrefixForAccount",
                "SetBech32PrefixForValidator",
                "SetBech32PrefixForConsensusNode",
                "GetFromBech32",
            ]
            .map(String::from)
            .to_vec(),
        }
    }
}

/// A detector hit before fingerprinting and suppression resolution.
#[derive(Clone, Debug)]
pub struct RawFinding {
    pub rule: RuleId,
    pub message: String,
    pub file: FileId,
    /// The flagged node.
    pub node: NodeId,
    pub line: u32,
    pub col: u32,
    pub byte_range: (u32, u32),
    /// Enclosing function, absent for package-level declarations.
    pub enclosing: Option<FuncId>,
    /// Fingerprint root: the enclosing function declaration node, or the
    /// package-level spec node for findings outside any function.
    pub owner_node: NodeId,
    /// Display name of the owner: `Transfer`, `(Keeper).Burn`, `const X`,
    /// `type Params`.
    pub owner_label: String,
    /// Rule 1 only: one shortest entry-to-function call chain.
    pub witness: Option<Vec<PathStep>>,
    /// Rule 1 only: every entry kind that reaches the site.
    pub entry_kinds: BTreeSet<EntryKind>,
}

fn func_owner_label(fd: &FuncDecl) -> String {
    match &fd.receiver {
        Some(r) => format!("({r}).{}", fd.name),
        None => fd.name.clone(),
    }
}

/// Finding at `node` inside function `f`.
fn flag_in_func(
    model: &SourceModel,
    rule: RuleId,
    f: FuncId,
    node: NodeId,
    message: String,
) -> RawFinding {
    let fd = model.tree.func(f);
    let n = model.tree.file(fd.file).node(node);
    RawFinding {
        rule,
        message,
        file: fd.file,
        node,
        line: n.line,
        col: n.col,
        byte_range: (n.start, n.end),
        enclosing: Some(f),
        owner_node: fd.decl,
        owner_label: func_owner_label(fd),
        witness: None,
        entry_kinds: BTreeSet::new(),
    }
}

/// Finding at `node` inside a package-level declaration rooted at `owner`.
fn flag_in_decl(
    model: &SourceModel,
    rule: RuleId,
    file: FileId,
    owner: NodeId,
    owner_label: String,
    node: NodeId,
    message: String,
) -> RawFinding {
    let n = model.tree.file(file).node(node);
    RawFinding {
        rule,
        message,
        file,
        node,
        line: n.line,
        col: n.col,
        byte_range: (n.start, n.end),
        enclosing: None,
        owner_node: owner,
        owner_label,
        witness: None,
        entry_kinds: BTreeSet::new(),
    }
}

// ---------------------------------------------------------------------------
// Rule 1: block panic
// ---------------------------------------------------------------------------

/// One finding per distinct `panic` call site reachable from a block entry
/// and lying inside the scope. Entry kinds are metadata, not multiplicity:
/// several paths (or several entries) to one site still yield one finding.
pub fn detect_block_panic(
    model: &SourceModel,
    graph: &CallGraph,
    scope: &ScopeSet,
    block_entries: &BTreeMap<EntryKind, BTreeSet<FuncId>>,
) -> Vec<RawFinding> {
    // Per-kind closures; the union is the candidate function set.
    let mut reach: BTreeMap<&EntryKind, BTreeSet<FuncId>> = BTreeMap::new();
    for (kind, seeds) in block_entries {
        let r = reachable_from(graph, seeds).expect("entry ids come from this graph");
        reach.insert(kind, r);
    }
    let mut candidates: BTreeSet<FuncId> = BTreeSet::new();
    for r in reach.values() {
        candidates.extend(r.iter().copied());
    }

    let mut out = Vec::new();
    for f in candidates {
        let fd = model.tree.func(f);
        if fd.is_test_file || !scope.contains(f) {
            continue;
        }
        let file = model.tree.file(fd.file);
        let sites: Vec<NodeId> = file
            .descendants(fd.decl)
            .filter(|&id| file.node(id).kind == NodeKind::PanicCall)
            .collect();
        if sites.is_empty() {
            continue;
        }

        let kinds: BTreeSet<EntryKind> = reach
            .iter()
            .filter(|(_, r)| r.contains(&f))
            .map(|(k, _)| (*k).clone())
            .collect();

        // One witness for the function: the shortest chain from any reaching
        // entry, ties broken by entry identity for determinism.
        let mut witness: Option<Vec<PathStep>> = None;
        for kind in &kinds {
            for &seed in &block_entries[kind] {
                if !reach[kind].contains(&f) {
                    continue;
                }
                if let Ok(path) = shortest_witness_path(graph, model, seed, f) {
                    if witness.as_ref().map_or(true, |w| path.len() < w.len()) {
                        witness = Some(path);
                    }
                }
            }
        }

        let kind_list = kinds
            .iter()
            .map(|k| k.to_string())
            .collect::<Vec<_>>()
            .join(", ");
        for site in sites {
            let mut raw = flag_in_func(
                model,
                RuleId::BlockPanic,
                f,
                site,
                format!("built-in panic reachable from {kind_list}; a panicking block handler halts every node"),
            );
            raw.witness = witness.clone();
            raw.entry_kinds = kinds.clone();
            out.push(raw);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rule 2: map iteration
// ---------------------------------------------------------------------------

/// One finding per range statement whose operand classifies as a map.
pub fn detect_map_iteration(model: &SourceModel, scope: &ScopeSet) -> Vec<RawFinding> {
    let mut out = Vec::new();
    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            if file.node(id).kind != NodeKind::RangeStmt {
                continue;
            }
            let Some(clause) = file.children(id).find(|&c| file.node(c).raw == "range_clause")
            else {
                continue;
            };
            let Some(operand) = file.child_by_field(clause, "right") else {
                continue;
            };
            let class = model.classify_node(NodeRef {
                file: fd.file,
                node: operand,
            });
            if matches!(class, Classification::Map(..)) {
                out.push(flag_in_func(
                    model,
                    RuleId::MapIteration,
                    f,
                    id,
                    "iteration over a map; the runtime randomizes map order per process".to_string(),
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rule 3: hardcoded Bech32
// ---------------------------------------------------------------------------

const STRING_LITERALS: [&str; 2] = ["interpreted_string_literal", "raw_string_literal"];

fn string_literal_value(model: &SourceModel, file: FileId, node: NodeId) -> Option<String> {
    let f = model.tree.file(file);
    let n = f.node(node);
    if n.kind != NodeKind::BasicLiteral || !STRING_LITERALS.contains(&n.raw) {
        return None;
    }
    literal_text(f.text_of(node))
}

/// Checksum-valid address literals in scope functions, address literals in
/// package-level constants referenced from scope, and string arguments to the
/// configured prefix setters.
pub fn detect_hardcoded_bech32(
    model: &SourceModel,
    scope: &ScopeSet,
    config: &RuleConfig,
) -> Vec<RawFinding> {
    // Keyed by flagged node so a literal matched by several clauses (a valid
    // address passed straight to a setter) yields exactly one finding.
    let mut out: BTreeMap<NodeRef, RawFinding> = BTreeMap::new();
    let mut referenced_consts: BTreeSet<(crate::source::PackageId, String)> = BTreeSet::new();

    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            let node = file.node(id);

            // (a) Validating literals written directly in scope code.
            if let Some(value) = string_literal_value(model, fd.file, id) {
                if is_valid_bech32(&value) {
                    let at = NodeRef {
                        file: fd.file,
                        node: id,
                    };
                    out.entry(at).or_insert_with(|| {
                        flag_in_func(
                            model,
                            RuleId::HardcodedBech32,
                            f,
                            id,
                            "hardcoded Bech32 address literal; derive addresses from runtime configuration"
                                .to_string(),
                        )
                    });
                }
                continue;
            }

            // (b) References to package-level string constants.
            match node.raw {
                "identifier" => {
                    let name = file.text_of(id);
                    if !model.env_of(f).contains_key(name) {
                        referenced_consts.insert((file.package, name.to_string()));
                    }
                }
                "selector_expression" => {
                    let (Some(operand), Some(field)) = (
                        file.child_by_field(id, "operand"),
                        file.child_by_field(id, "field"),
                    ) else {
                        continue;
                    };
                    if file.node(operand).raw != "identifier" {
                        continue;
                    }
                    let qual = file.text_of(operand);
                    if let Some(path) = model.qualifier_path(fd.file, Some(f), qual) {
                        if let Some(pkg) = model.tree.package_by_import(path) {
                            referenced_consts.insert((pkg, file.text_of(field).to_string()));
                        }
                    }
                }
                _ => {}
            }

            // (c) String arguments handed to a prefix setter.
            if node.kind == NodeKind::CallExpr {
                let Some(callee) = file.child_by_field(id, "function") else {
                    continue;
                };
                let callee_name = match file.node(callee).raw {
                    "identifier" => file.text_of(callee),
                    "selector_expression" => match file.child_by_field(callee, "field") {
                        Some(field) => file.text_of(field),
                        None => continue,
                    },
                    _ => continue,
                };
                if !config.bech32_setters.iter().any(|s| s == callee_name) {
                    continue;
                }
                let Some(args) = file.child_by_field(id, "arguments") else {
                    continue;
                };
                let callee_name = callee_name.to_string();
                for arg in file.children(args) {
                    if string_literal_value(model, fd.file, arg).is_some() {
                        let at = NodeRef {
                            file: fd.file,
                            node: arg,
                        };
                        out.entry(at).or_insert_with(|| {
                            flag_in_func(
                                model,
                                RuleId::HardcodedBech32,
                                f,
                                arg,
                                format!("hardcoded Bech32 prefix argument to {callee_name}"),
                            )
                        });
                    }
                }
            }
        }
    }

    // Resolve the referenced constants: flag the ones whose value validates.
    for (pkg, name) in referenced_consts {
        let Some(&lit) = model.string_consts.get(&(pkg, name.clone())) else {
            continue;
        };
        let Some(value) = string_literal_value(model, lit.file, lit.node) else {
            continue;
        };
        if !is_valid_bech32(&value) {
            continue;
        }
        let file = model.tree.file(lit.file);
        if file.is_test {
            continue;
        }
        let owner = file
            .ancestor_where(lit.node, |n| n.raw == "const_spec")
            .unwrap_or(lit.node);
        out.entry(lit).or_insert_with(|| {
            flag_in_decl(
                model,
                RuleId::HardcodedBech32,
                lit.file,
                owner,
                format!("const {name}"),
                lit.node,
                format!(
                    "hardcoded Bech32 address in constant {name}, referenced from consensus-critical code"
                ),
            )
        });
    }

    out.into_values().collect()
}

// ---------------------------------------------------------------------------
// Rule 4: goroutines and select
// ---------------------------------------------------------------------------

pub fn detect_goroutine(model: &SourceModel, scope: &ScopeSet) -> Vec<RawFinding> {
    let mut out = Vec::new();
    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            let message = match file.node(id).kind {
                NodeKind::SpawnStmt => {
                    "goroutine spawned in consensus-critical code; scheduling order is not replicated"
                }
                NodeKind::SelectStmt => {
                    "select over channels in consensus-critical code; ready-case choice is not replicated"
                }
                _ => continue,
            };
            out.push(flag_in_func(
                model,
                RuleId::Goroutine,
                f,
                id,
                message.to_string(),
            ));
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rule 5: floating point
// ---------------------------------------------------------------------------

const FLOAT_ARITH_OPS: [&str; 4] = ["+", "-", "*", "/"];

pub fn detect_float(model: &SourceModel, scope: &ScopeSet) -> Vec<RawFinding> {
    let mut out = Vec::new();
    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            let node = file.node(id);
            let at = NodeRef {
                file: fd.file,
                node: id,
            };
            match node.kind {
                NodeKind::BinaryExpr => {
                    let arith = node.op.map_or(false, |op| FLOAT_ARITH_OPS.contains(&op));
                    if arith && model.is_float(at) {
                        out.push(flag_in_func(
                            model,
                            RuleId::FloatArithmetic,
                            f,
                            id,
                            format!(
                                "floating-point arithmetic ('{}'); results vary across architectures",
                                node.op.unwrap_or("?")
                            ),
                        ));
                    }
                }
                NodeKind::ConversionExpr => {
                    if model.is_float(at) {
                        out.push(flag_in_func(
                            model,
                            RuleId::FloatArithmetic,
                            f,
                            id,
                            "conversion to a floating-point type".to_string(),
                        ));
                    }
                }
                // Local variable declarations: flag when any declared name
                // binds to a floating type.
                NodeKind::VarDecl => {
                    let env = model.env_of(f);
                    let mut names: Vec<&str> = Vec::new();
                    match node.raw {
                        "var_spec" => {
                            names.extend(file.children_by_field(id, "name").map(|n| file.text_of(n)));
                        }
                        "short_var_declaration" => {
                            if let Some(left) = file.child_by_field(id, "left") {
                                names.extend(
                                    file.children(left)
                                        .filter(|&n| file.node(n).raw == "identifier")
                                        .map(|n| file.text_of(n)),
                                );
                            }
                        }
                        _ => {}
                    }
                    let float_decl = names.iter().any(|n| {
                        env.get(*n)
                            .map_or(false, |&t| matches!(model.classify(t), Classification::Float))
                    });
                    if float_decl {
                        out.push(flag_in_func(
                            model,
                            RuleId::FloatArithmetic,
                            f,
                            id,
                            "declaration with a floating-point type".to_string(),
                        ));
                    }
                }
                // Parameters, results, and in-function struct fields.
                NodeKind::FieldDecl => {
                    let float_ty = file.child_by_field(id, "type").map_or(false, |ty| {
                        model.is_float(NodeRef {
                            file: fd.file,
                            node: ty,
                        })
                    });
                    if float_ty {
                        out.push(flag_in_func(
                            model,
                            RuleId::FloatArithmetic,
                            f,
                            id,
                            "declaration with a floating-point type".to_string(),
                        ));
                    }
                }
                _ => {}
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rule 6: system time
// ---------------------------------------------------------------------------

/// Closed deny list of qualified names; block time read off the context
/// object never matches because the qualifier is a value, not an import.
pub fn detect_system_time(
    model: &SourceModel,
    scope: &ScopeSet,
    config: &RuleConfig,
) -> Vec<RawFinding> {
    let mut out = Vec::new();
    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            if file.node(id).kind != NodeKind::CallExpr {
                continue;
            }
            let Some(callee) = file.child_by_field(id, "function") else {
                continue;
            };
            if file.node(callee).raw != "selector_expression" {
                continue;
            }
            let (Some(operand), Some(field)) = (
                file.child_by_field(callee, "operand"),
                file.child_by_field(callee, "field"),
            ) else {
                continue;
            };
            if file.node(operand).raw != "identifier" {
                continue;
            }
            let Some(path) = model.qualifier_path(fd.file, Some(f), file.text_of(operand)) else {
                continue;
            };
            let qualified = format!("{path}.{}", file.text_of(field));
            if config.time_deny.iter().any(|d| *d == qualified) {
                out.push(flag_in_func(
                    model,
                    RuleId::SystemTime,
                    f,
                    id,
                    format!("call to {qualified} reads the local wall clock; node clocks are never synchronized"),
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rule 7: unsafe packages
// ---------------------------------------------------------------------------

/// Use-sites (selectors, calls, qualified type spellings) whose qualifier
/// resolves to a deny-listed import path. Imports with zero in-scope uses are
/// silent by construction: only uses are visited.
pub fn detect_unsafe_package(
    model: &SourceModel,
    scope: &ScopeSet,
    config: &RuleConfig,
) -> Vec<RawFinding> {
    let mut out = Vec::new();
    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            let node = file.node(id);
            let qualifier = match node.raw {
                "selector_expression" => file
                    .child_by_field(id, "operand")
                    .filter(|&op| file.node(op).raw == "identifier"),
                "qualified_type" => file.child_by_field(id, "package"),
                _ => None,
            };
            let Some(qualifier) = qualifier else { continue };
            let Some(path) = model.qualifier_path(fd.file, Some(f), file.text_of(qualifier))
            else {
                continue;
            };
            if config.unsafe_packages.iter().any(|p| p == path) {
                let path = path.to_string();
                out.push(flag_in_func(
                    model,
                    RuleId::UnsafePackage,
                    f,
                    id,
                    format!("use of package {path} in consensus-critical code"),
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Rule 8: platform-dependent integer types
// ---------------------------------------------------------------------------

const PLATFORM_SPELLINGS: [&str; 3] = ["int", "uint", "uintptr"];

/// Explicit `int`/`uint`/`uintptr` spellings in declarations and conversions,
/// inside scope functions and inside the package-level type declarations
/// those functions use. Inferred integers have no spelling and never flag.
pub fn detect_platform_types(model: &SourceModel, scope: &ScopeSet) -> Vec<RawFinding> {
    let mut flagged: BTreeSet<NodeRef> = BTreeSet::new();
    let mut out = Vec::new();
    let mut used_types: BTreeSet<(crate::source::PackageId, String)> = BTreeSet::new();

    for &f in &scope.members {
        let fd = model.tree.func(f);
        let file = model.tree.file(fd.file);
        for id in file.descendants(fd.decl) {
            let node = file.node(id);
            match node.raw {
                "type_identifier" => {
                    let text = file.text_of(id);
                    if PLATFORM_SPELLINGS.contains(&text) {
                        let at = NodeRef {
                            file: fd.file,
                            node: id,
                        };
                        if flagged.insert(at) {
                            let text = text.to_string();
                            out.push(flag_in_func(
                                model,
                                RuleId::PlatformDependentType,
                                f,
                                id,
                                format!("platform-dependent integer type {text}; width differs between 32- and 64-bit nodes"),
                            ));
                        }
                    } else if model.named.contains_key(&(file.package, text.to_string())) {
                        used_types.insert((file.package, text.to_string()));
                    }
                }
                "qualified_type" => {
                    let (Some(pkg_node), Some(name_node)) = (
                        file.child_by_field(id, "package"),
                        file.child_by_field(id, "name"),
                    ) else {
                        continue;
                    };
                    if let Some(path) =
                        model.qualifier_path(fd.file, Some(f), file.text_of(pkg_node))
                    {
                        if let Some(pkg) = model.tree.package_by_import(path) {
                            let name = file.text_of(name_node).to_string();
                            if model.named.contains_key(&(pkg, name.clone())) {
                                used_types.insert((pkg, name));
                            }
                        }
                    }
                }
                "call_expression" if node.kind == NodeKind::ConversionExpr => {
                    let Some(callee) = file.child_by_field(id, "function") else {
                        continue;
                    };
                    if file.node(callee).raw == "identifier" {
                        let text = file.text_of(callee);
                        if PLATFORM_SPELLINGS.contains(&text) {
                            let at = NodeRef {
                                file: fd.file,
                                node: id,
                            };
                            if flagged.insert(at) {
                                let text = text.to_string();
                                out.push(flag_in_func(
                                    model,
                                    RuleId::PlatformDependentType,
                                    f,
                                    id,
                                    format!("conversion to platform-dependent integer type {text}"),
                                ));
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }

    // Declarations of the named types scope code uses.
    for (pkg, name) in used_types {
        let Some(info) = model.named.get(&(pkg, name.clone())) else {
            continue;
        };
        if info.is_test {
            continue;
        }
        let file = model.tree.file(info.file);
        for id in file.descendants(info.node) {
            if file.node(id).raw != "type_identifier" {
                continue;
            }
            let text = file.text_of(id);
            if !PLATFORM_SPELLINGS.contains(&text) {
                continue;
            }
            let at = NodeRef {
                file: info.file,
                node: id,
            };
            if flagged.insert(at) {
                let text = text.to_string();
                out.push(flag_in_decl(
                    model,
                    RuleId::PlatformDependentType,
                    info.file,
                    info.node,
                    format!("type {name}"),
                    id,
                    format!("platform-dependent integer type {text} in type {name}, used from consensus-critical code"),
                ));
            }
        }
    }
    out
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

/// Run the enabled detectors and sort the union by
/// (file path, line, column, rule, byte offset).
pub fn run_all(
    model: &SourceModel,
    graph: &CallGraph,
    scope: &ScopeSet,
    entries: &BTreeMap<EntryKind, BTreeSet<FuncId>>,
    config: &RuleConfig,
) -> Vec<RawFinding> {
    let mut out = Vec::new();
    let on = |r: RuleId| config.enabled.contains(&r);

    if on(RuleId::BlockPanic) {
        let block_entries: BTreeMap<EntryKind, BTreeSet<FuncId>> = entries
            .iter()
            .filter(|(k, _)| matches!(k, EntryKind::BeginBlock | EntryKind::EndBlock))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        out.extend(detect_block_panic(model, graph, scope, &block_entries));
    }
    if on(RuleId::MapIteration) {
        out.extend(detect_map_iteration(model, scope));
    }
    if on(RuleId::HardcodedBech32) {
        out.extend(detect_hardcoded_bech32(model, scope, config));
    }
    if on(RuleId::Goroutine) {
        out.extend(detect_goroutine(model, scope));
    }
    if on(RuleId::FloatArithmetic) {
        out.extend(detect_float(model, scope));
    }
    if on(RuleId::SystemTime) {
        out.extend(detect_system_time(model, scope, config));
    }
    if on(RuleId::UnsafePackage) {
        out.extend(detect_unsafe_package(model, scope, config));
    }
    if on(RuleId::PlatformDependentType) {
        out.extend(detect_platform_types(model, scope));
    }

    out.sort_by(|a, b| {
        let ka = (
            model.tree.file(a.file).path.as_str(),
            a.line,
            a.col,
            a.rule,
            a.byte_range.0,
        );
        let kb = (
            model.tree.file(b.file).path.as_str(),
            b.line,
            b.col,
            b.rule,
            b.byte_range.0,
        );
        ka.cmp(&kb)
    });
    out
}
