//! Static call graph over function declarations, with reachability and
//! shortest-witness-path queries.
//!
//! Resolution policy:
//!
//! * **Direct** — the callee resolves by name (same-package call, qualified
//!   in-tree package call, or method call on a receiver whose type binds to an
//!   in-tree named type), or through a local variable bound to a single
//!   function reference.
//! * **InterfaceDispatch** — the callee is a method of an in-tree interface
//!   type; one edge is added to every in-tree type whose method set satisfies
//!   that interface and declares the method (type-hierarchy dispatch,
//!   deliberately over-approximate: the whitelist must not miss
//!   consensus-critical code).
//! * **Unresolved** — a call through a function-typed value we decline to
//!   resolve (param, field, element, or multiply-assigned local). These edges
//!   have no callee, are excluded from reachability, and are surfaced as a
//!   coverage warning.
//!
//! Calls into packages outside the tree are leaf calls: no edge at all
//! (prebuilt modules are treated as black boxes). Calls inside function
//! literals are attributed to the lexically enclosing declaration.

use std::collections::{BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::source::{FileId, FuncId, NodeId, NodeKind, SourceModel};
use crate::{Error, Result};

/// Go builtins that appear in call position but never produce edges.
const BUILTIN_CALLEES: &[&str] = &[
    "append", "cap", "clear", "close", "complex", "copy", "delete", "imag", "len", "make", "max",
    "min", "new", "panic", "print", "println", "real", "recover",
];

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum Resolution {
    Direct,
    InterfaceDispatch,
    Unresolved,
}

impl Resolution {
    pub fn name(self) -> &'static str {
        match self {
            Resolution::Direct => "direct",
            Resolution::InterfaceDispatch => "interface",
            Resolution::Unresolved => "unresolved",
        }
    }
}

/// One call edge. `callee` is `None` exactly for `Unresolved` edges.
#[derive(Clone, Debug)]
pub struct Edge {
    pub caller: FuncId,
    pub callee: Option<FuncId>,
    pub file: FileId,
    pub line: u32,
    pub col: u32,
    pub resolution: Resolution,
}

/// Immutable call graph; queries are read-only and thread-safe.
pub struct CallGraph {
    node_count: usize,
    pub edges: Vec<Edge>,
    /// Adjacency over resolved edges only: successor and edge index.
    succ: Vec<Vec<(FuncId, usize)>>,
    pred: Vec<Vec<(FuncId, usize)>>,
}

impl CallGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Unresolved call sites, for the coverage warning.
    pub fn unresolved(&self) -> impl Iterator<Item = &Edge> {
        self.edges
            .iter()
            .filter(|e| e.resolution == Resolution::Unresolved)
    }
}

/// Build the call graph for a bound model.
pub fn build_call_graph(model: &SourceModel) -> CallGraph {
    let n = model.tree.funcs.len();
    let mut edges = Vec::new();
    for i in 0..n {
        extract_edges(model, FuncId(i as u32), &mut edges);
    }

    let mut succ = vec![Vec::new(); n];
    let mut pred = vec![Vec::new(); n];
    for (ei, e) in edges.iter().enumerate() {
        if let Some(callee) = e.callee {
            succ[e.caller.0 as usize].push((callee, ei));
            pred[callee.0 as usize].push((e.caller, ei));
        }
    }
    CallGraph {
        node_count: n,
        edges,
        succ,
        pred,
    }
}

/// Transitive closure over resolved edges, seeds included.
pub fn reachable_from(graph: &CallGraph, seeds: &BTreeSet<FuncId>) -> Result<BTreeSet<FuncId>> {
    for &s in seeds {
        if s.0 as usize >= graph.node_count {
            return Err(Error::Analysis(format!(
                "seed function id {} not in graph (node count {})",
                s.0, graph.node_count
            )));
        }
    }
    let mut seen: BTreeSet<FuncId> = seeds.clone();
    let mut queue: VecDeque<FuncId> = seeds.iter().copied().collect();
    while let Some(f) = queue.pop_front() {
        for &(next, _) in &graph.succ[f.0 as usize] {
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    Ok(seen)
}

/// One hop of a witness path: the callee entered and the call site used.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathStep {
    pub callee: FuncId,
    pub file: FileId,
    pub line: u32,
    pub col: u32,
}

/// A minimum-edge-count path `from ⇒ to`; ties are broken hop by hop toward
/// the lexicographically smallest `(callee importPath, name, file, offset)`.
/// `from == to` yields the empty path.
pub fn shortest_witness_path(
    graph: &CallGraph,
    model: &SourceModel,
    from: FuncId,
    to: FuncId,
) -> Result<Vec<PathStep>> {
    let dist_to = bfs_dist(graph, to, /*reverse=*/ true);
    let Some(total) = dist_to[from.0 as usize] else {
        return Err(Error::Analysis(format!(
            "no path from {} to {}",
            model.tree.func_key(from),
            model.tree.func_key(to)
        )));
    };
    let mut path = Vec::with_capacity(total as usize);
    let mut cur = from;
    while cur != to {
        let d = dist_to[cur.0 as usize].expect("on a shortest path");
        // Successors that stay on some shortest path.
        let mut best: Option<(FuncId, usize)> = None;
        for &(next, ei) in &graph.succ[cur.0 as usize] {
            if dist_to[next.0 as usize] != Some(d - 1) {
                continue;
            }
            best = Some(match best {
                None => (next, ei),
                Some((bn, bei)) => {
                    use std::cmp::Ordering;
                    match func_sort_key(model, next).cmp(&func_sort_key(model, bn)) {
                        Ordering::Less => (next, ei),
                        Ordering::Greater => (bn, bei),
                        Ordering::Equal => {
                            // Same callee through two sites: earliest site wins.
                            let (a, b) = (&graph.edges[ei], &graph.edges[bei]);
                            if (a.line, a.col) < (b.line, b.col) {
                                (next, ei)
                            } else {
                                (bn, bei)
                            }
                        }
                    }
                }
            });
        }
        let (next, ei) = best.expect("shortest-path successor exists");
        let e = &graph.edges[ei];
        path.push(PathStep {
            callee: next,
            file: e.file,
            line: e.line,
            col: e.col,
        });
        cur = next;
    }
    Ok(path)
}

/// Sort key for tie-breaking: (importPath, name, file path, offset).
fn func_sort_key<'m>(model: &'m SourceModel, f: FuncId) -> (&'m str, &'m str, &'m str, u32) {
    let fd = model.tree.func(f);
    (
        model.tree.package(fd.package).import_path.as_str(),
        fd.name.as_str(),
        model.tree.file(fd.file).path.as_str(),
        fd.offset,
    )
}

fn bfs_dist(graph: &CallGraph, start: FuncId, reverse: bool) -> Vec<Option<u32>> {
    let mut dist = vec![None; graph.node_count];
    dist[start.0 as usize] = Some(0);
    let mut queue = VecDeque::from([start]);
    while let Some(f) = queue.pop_front() {
        let d = dist[f.0 as usize].unwrap();
        let adj = if reverse {
            &graph.pred[f.0 as usize]
        } else {
            &graph.succ[f.0 as usize]
        };
        for &(next, _) in adj {
            if dist[next.0 as usize].is_none() {
                dist[next.0 as usize] = Some(d + 1);
                queue.push_back(next);
            }
        }
    }
    dist
}

/// Edge list as line-oriented text: `caller<TAB>callee<TAB>file:line<TAB>resolution`,
/// sorted lexicographically. Unresolved edges render their callee as `-`.
pub fn dump_graph(model: &SourceModel, graph: &CallGraph) -> String {
    let mut lines: Vec<String> = graph
        .edges
        .iter()
        .map(|e| {
            let caller = model.tree.func_display(e.caller);
            let callee = match e.callee {
                Some(c) => model.tree.func_display(c),
                None => "-".to_string(),
            };
            format!(
                "{caller}\t{callee}\t{}:{}\t{}",
                model.tree.file(e.file).path,
                e.line,
                e.resolution.name()
            )
        })
        .collect();
    lines.sort();
    let mut out = lines.join("\n");
    if !out.is_empty() {
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Edge extraction
// ---------------------------------------------------------------------------

fn extract_edges(model: &SourceModel, caller: FuncId, edges: &mut Vec<Edge>) {
    let fd = model.tree.func(caller);
    let (fid, decl) = (fd.file, fd.decl);
    let file = model.tree.file(fid);
    let env = model.env_of(caller);
    let bindings = local_func_bindings(model, caller);

    for id in file.descendants(decl) {
        let node = file.node(id);
        if !matches!(node.kind, NodeKind::CallExpr) {
            continue;
        }
        let Some(callee) = file.child_by_field(id, "function") else {
            continue;
        };
        let (line, col) = (node.line, node.col);
        let push = |callee: Option<FuncId>, resolution: Resolution, edges: &mut Vec<Edge>| {
            edges.push(Edge {
                caller,
                callee,
                file: fid,
                line,
                col,
                resolution,
            });
        };

        match file.node(callee).raw {
            "identifier" => {
                let name = file.text_of(callee);
                if env.contains_key(name) {
                    // A local (or parameter) used as a callable value.
                    match bindings.get(name) {
                        Some(targets) if targets.len() == 1 => match targets[0] {
                            Some(f) => push(Some(f), Resolution::Direct, edges),
                            None => push(None, Resolution::Unresolved, edges),
                        },
                        _ => push(None, Resolution::Unresolved, edges),
                    }
                } else if let Some(&f) = model
                    .pkg_funcs
                    .get(&(file.package, name.to_string()))
                {
                    push(Some(f), Resolution::Direct, edges);
                } else if BUILTIN_CALLEES.binary_search(&name).is_err() {
                    // Unknown bare name: dot-import or out-of-tree — leaf.
                }
            }
            "selector_expression" => {
                resolve_selector_call(model, caller, fid, callee, &mut |t, r| match r {
                    Resolution::Unresolved => push(None, r, edges),
                    _ => push(t, r, edges),
                });
            }
            "parenthesized_expression" => {
                // `(f)(x)` — treat like a function-typed value.
                push(None, Resolution::Unresolved, edges);
            }
            "index_expression" | "call_expression" | "type_assertion_expression" => {
                // Calling an indexed element or another call's result: a
                // function-typed value we do not track.
                push(None, Resolution::Unresolved, edges);
            }
            // `func(){...}()` — the body is already attributed to the caller.
            "func_literal" => {}
            _ => {}
        }
    }
}

/// Resolve a `<operand>.<name>(...)` call site. Invokes `emit` once per
/// resolved target (several times for interface dispatch), or once with
/// `Unresolved` when the operand is in-tree but the call cannot be pinned.
fn resolve_selector_call(
    model: &SourceModel,
    caller: FuncId,
    fid: FileId,
    selector: NodeId,
    emit: &mut dyn FnMut(Option<FuncId>, Resolution),
) {
    let file = model.tree.file(fid);
    let (Some(operand), Some(field)) = (
        file.child_by_field(selector, "operand"),
        file.child_by_field(selector, "field"),
    ) else {
        return;
    };
    let method = file.text_of(field).to_string();

    // Package-qualified call: `pkg.Func(...)`.
    if file.node(operand).raw == "identifier" {
        let qual = file.text_of(operand);
        if let Some(path) = model.qualifier_path(fid, Some(caller), qual) {
            let path = path.to_string();
            match model.tree.package_by_import(&path) {
                Some(target) => {
                    if let Some(&f) = model.pkg_funcs.get(&(target, method)) {
                        emit(Some(f), Resolution::Direct);
                    }
                    // In-tree package but unknown name (e.g. a var): leaf.
                }
                None => {} // out-of-tree package: leaf call
            }
            return;
        }
    }

    // Receiver-typed call: struct method (direct) or interface dispatch.
    // Methods auto-dereference, so `k.M()` on a `*Keeper` receiver resolves
    // exactly like one on a `Keeper`.
    use crate::source::Classification;
    let operand_ref = crate::source::NodeRef {
        file: fid,
        node: operand,
    };
    let t = model.deref(model.type_of(operand_ref));
    match model.classify(t) {
        Classification::Named { .. } => {
            if let Some((pkg, name)) = model_named_parts(model, t) {
                // In-tree named type?
                if let Some(info) = model.named.get(&(pkg, name.clone())) {
                    match &info.kind {
                        crate::source::NamedKind::Interface { methods } => {
                            if methods.iter().any(|(m, _)| *m == method) {
                                dispatch_interface(model, methods, &method, emit);
                            }
                            // Method not in the interface: impossible call; leaf.
                        }
                        _ => {
                            if let Some(&f) = model.methods.get(&(pkg, name, method)) {
                                emit(Some(f), Resolution::Direct);
                            }
                            // Promoted/embedded methods are not modeled: leaf.
                        }
                    }
                }
            }
        }
        // Unknown or out-of-tree receiver: black-box leaf call.
        _ => {}
    }
}

/// Emit an InterfaceDispatch edge to every in-tree type whose method set
/// satisfies `iface_methods` and which declares `method`.
fn dispatch_interface(
    model: &SourceModel,
    iface_methods: &[(String, usize)],
    method: &str,
    emit: &mut dyn FnMut(Option<FuncId>, Resolution),
) {
    if iface_methods.is_empty() {
        return; // the empty interface would match every type in the tree
    }
    for ((pkg, base), mset) in &model.method_sets {
        let satisfies = iface_methods
            .iter()
            .all(|req| mset.binary_search(req).is_ok());
        if !satisfies {
            continue;
        }
        if let Some(&f) = model
            .methods
            .get(&(*pkg, base.clone(), method.to_string()))
        {
            emit(Some(f), Resolution::InterfaceDispatch);
        }
    }
}

/// Named-type components of a bound type, following one pointer level.
fn model_named_parts(
    model: &SourceModel,
    t: crate::source::TypeId,
) -> Option<(crate::source::PackageId, String)> {
    match model.classify(t) {
        crate::source::Classification::Named { name, import_path } => {
            let pkg = model.tree.package_by_import(&import_path)?;
            Some((pkg, name))
        }
        _ => None,
    }
}

/// Local names bound to function references. Each assignment to a name pushes
/// an entry (`Some` for a resolvable function reference, `None` otherwise); a
/// call through the name is Direct only when exactly one `Some` entry exists.
fn local_func_bindings(
    model: &SourceModel,
    caller: FuncId,
) -> HashMap<String, Vec<Option<FuncId>>> {
    let fd = model.tree.func(caller);
    let file = model.tree.file(fd.file);
    let mut out: HashMap<String, Vec<Option<FuncId>>> = HashMap::new();
    let Some(body) = fd.body else { return out };

    let record = |name: String, value: Option<FuncId>, out: &mut HashMap<String, Vec<Option<FuncId>>>| {
        out.entry(name).or_default().push(value);
    };

    for id in file.descendants(body) {
        let raw = file.node(id).raw;
        let (left, right) = match raw {
            "short_var_declaration" | "assignment_statement" => (
                file.child_by_field(id, "left"),
                file.child_by_field(id, "right"),
            ),
            "var_spec" => {
                let names: Vec<NodeId> = file.children_by_field(id, "name").collect();
                let values: Vec<NodeId> = file
                    .child_by_field(id, "value")
                    .map(|v| file.children(v).collect())
                    .unwrap_or_default();
                for (i, &n) in names.iter().enumerate() {
                    let name = file.text_of(n).to_string();
                    let v = values
                        .get(i)
                        .and_then(|&v| resolve_func_value(model, caller, fd.file, v));
                    record(name, v, &mut out);
                }
                continue;
            }
            _ => continue,
        };
        let (Some(left), Some(right)) = (left, right) else {
            continue;
        };
        let names: Vec<NodeId> = file.children(left).collect();
        let values: Vec<NodeId> = file.children(right).collect();
        if names.len() != values.len() {
            for &n in &names {
                if file.node(n).raw == "identifier" {
                    record(file.text_of(n).to_string(), None, &mut out);
                }
            }
            continue;
        }
        for (&n, &v) in names.iter().zip(&values) {
            if file.node(n).raw != "identifier" {
                continue;
            }
            let name = file.text_of(n).to_string();
            let target = resolve_func_value(model, caller, fd.file, v);
            record(name, target, &mut out);
        }
    }
    out
}

/// Does this expression denote a specific in-tree function? (Bare reference
/// to a package function, a qualified in-tree function, or a method value on
/// a typed receiver.)
fn resolve_func_value(
    model: &SourceModel,
    caller: FuncId,
    fid: FileId,
    value: NodeId,
) -> Option<FuncId> {
    let file = model.tree.file(fid);
    match file.node(value).raw {
        "identifier" => {
            let name = file.text_of(value);
            if model.env_of(caller).contains_key(name) {
                return None;
            }
            model
                .pkg_funcs
                .get(&(file.package, name.to_string()))
                .copied()
        }
        "selector_expression" => {
            let operand = file.child_by_field(value, "operand")?;
            let field = file.child_by_field(value, "field")?;
            let name = file.text_of(field).to_string();
            if file.node(operand).raw == "identifier" {
                let qual = file.text_of(operand);
                if let Some(path) = model.qualifier_path(fid, Some(caller), qual) {
                    let target = model.tree.package_by_import(path)?;
                    return model.pkg_funcs.get(&(target, name)).copied();
                }
            }
            // Method value `x.M` on a typed receiver (auto-dereferenced).
            let t = model.deref(model.type_of(crate::source::NodeRef {
                file: fid,
                node: operand,
            }));
            let (pkg, base) = model_named_parts(model, t)?;
            model.methods.get(&(pkg, base, name)).copied()
        }
        _ => None,
    }
}
