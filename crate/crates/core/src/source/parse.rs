//! Filesystem walking, parsing, and tree assembly.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use globset::{Glob, GlobSet, GlobSetBuilder};
use rayon::prelude::*;

use super::model::{FuncDecl, Package, PackageId, ParseDiagnostic, SourceTree};
use super::syntax::{kind_for_raw, Comment, FileId, NodeId, NodeKind, SourceFile, SyntaxNode};
use crate::{Error, Result};

/// Builtin types whose names in call position make the call a conversion
/// (unless shadowed by a package-level function or value).
const BUILTIN_CONVERTIBLE: &[&str] = &[
    "bool", "byte", "complex128", "complex64", "float32", "float64", "int", "int16", "int32",
    "int64", "int8", "rune", "string", "uint", "uint16", "uint32", "uint64", "uint8", "uintptr",
];

/// Parse every file under `root` matching `include` minus `exclude` into a
/// [`SourceTree`].
///
/// Glob patterns match the '/'-separated path relative to `root`. An empty
/// include list means `**/*.go`. Parse failures (and unreadable files) become
/// diagnostics and exclude only the offending file; the result is independent
/// of directory-traversal order because files are sorted by relative path
/// before ids are assigned.
pub fn parse_tree(root: &Path, include: &[String], exclude: &[String]) -> Result<SourceTree> {
    if !root.is_dir() {
        return Err(Error::RootNotFound(root.display().to_string()));
    }
    let include_set = build_globset(include, &["**/*.go"])?;
    let exclude_set = build_globset(exclude, &[])?;

    let mut rel_paths: Vec<String> = Vec::new();
    for entry in walkdir::WalkDir::new(root)
        .follow_links(false)
        .into_iter()
        .filter_entry(|e| !is_hidden(e))
    {
        let entry = match entry {
            Ok(e) => e,
            Err(_) => continue,
        };
        if !entry.file_type().is_file() {
            continue;
        }
        let rel = match entry.path().strip_prefix(root) {
            Ok(r) => r,
            Err(_) => continue,
        };
        let rel = rel
            .components()
            .map(|c| c.as_os_str().to_string_lossy())
            .collect::<Vec<_>>()
            .join("/");
        if !rel.ends_with(".go") {
            continue;
        }
        if include_set.is_match(&rel) && !exclude_set.is_match(&rel) {
            rel_paths.push(rel);
        }
    }
    rel_paths.sort();

    let module_path = read_module_path(root);

    enum Outcome {
        File(Box<SourceFile>),
        Diag(ParseDiagnostic),
    }
    let outcomes: Vec<Outcome> = rel_paths
        .par_iter()
        .map_init(new_parser, |parser, rel| {
            let abs = root.join(rel);
            let text = match std::fs::read_to_string(&abs) {
                Ok(t) => t,
                Err(e) => {
                    return Outcome::Diag(ParseDiagnostic {
                        path: rel.clone(),
                        line: 0,
                        col: 0,
                        message: format!("unreadable: {e}"),
                    })
                }
            };
            match parse_file(parser, rel, text) {
                Ok(f) => Outcome::File(Box::new(f)),
                Err(d) => Outcome::Diag(d),
            }
        })
        .collect();

    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    for o in outcomes {
        match o {
            Outcome::File(f) => files.push(*f),
            Outcome::Diag(d) => diagnostics.push(d),
        }
    }
    if files.is_empty() {
        return Err(Error::EmptyTree(root.display().to_string()));
    }

    let mut tree = assemble(root, module_path, files, diagnostics);
    rekind_calls(&mut tree);
    collect_funcs(&mut tree);
    Ok(tree)
}

fn build_globset(patterns: &[String], default: &[&str]) -> Result<GlobSet> {
    let mut builder = GlobSetBuilder::new();
    let effective: Vec<String> = if patterns.is_empty() {
        default.iter().map(|s| s.to_string()).collect()
    } else {
        patterns.to_vec()
    };
    for p in &effective {
        let glob = Glob::new(p).map_err(|source| Error::Glob {
            pattern: p.clone(),
            source,
        })?;
        builder.add(glob);
    }
    builder.build().map_err(|source| Error::Glob {
        pattern: "<set>".into(),
        source,
    })
}

fn is_hidden(entry: &walkdir::DirEntry) -> bool {
    entry.depth() > 0
        && entry
            .file_name()
            .to_str()
            .map(|s| s.starts_with('.'))
            .unwrap_or(false)
}

/// `module` directive from `go.mod` at the tree root, if any.
fn read_module_path(root: &Path) -> Option<String> {
    let text = std::fs::read_to_string(root.join("go.mod")).ok()?;
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("module") {
            let rest = rest.trim();
            if !rest.is_empty() {
                return Some(rest.trim_matches('"').to_string());
            }
        }
    }
    None
}

fn new_parser() -> tree_sitter::Parser {
    let mut parser = tree_sitter::Parser::new();
    parser
        .set_language(&tree_sitter_go::LANGUAGE.into())
        .expect("Go grammar is ABI-compatible with the linked tree-sitter");
    parser
}

fn parse_file(
    parser: &mut tree_sitter::Parser,
    rel: &str,
    text: String,
) -> std::result::Result<SourceFile, ParseDiagnostic> {
    let ts_tree = parser.parse(&text, None).ok_or_else(|| ParseDiagnostic {
        path: rel.to_string(),
        line: 0,
        col: 0,
        message: "parser failure".into(),
    })?;
    let root = ts_tree.root_node();
    if root.has_error() {
        let (line, col) = first_error_position(root);
        return Err(ParseDiagnostic {
            path: rel.to_string(),
            line,
            col,
            message: "syntax error".into(),
        });
    }

    let mut nodes = Vec::new();
    let mut comments = Vec::new();
    let root_id = lower(root, None, None, &mut nodes, &mut comments);

    let package_name = package_clause_name(&nodes, &text).ok_or_else(|| ParseDiagnostic {
        path: rel.to_string(),
        line: 1,
        col: 1,
        message: "missing package clause".into(),
    })?;

    Ok(SourceFile {
        path: rel.to_string(),
        is_test: rel.ends_with("_test.go"),
        package_name,
        package: PackageId(0), // assigned during assembly
        text,
        root: root_id,
        nodes,
        comments,
    })
}

fn first_error_position(root: tree_sitter::Node) -> (u32, u32) {
    let mut cursor = root.walk();
    let mut stack = vec![root];
    while let Some(node) = stack.pop() {
        if node.is_error() || node.is_missing() {
            let p = node.start_position();
            return (p.row as u32 + 1, p.column as u32 + 1);
        }
        let children: Vec<_> = node.children(&mut cursor).collect();
        stack.extend(children.into_iter().rev());
    }
    (1, 1)
}

/// Recursively lower a tree-sitter node into the arena. Returns the new id.
///
/// Only named children are kept; comments are diverted to the side list so
/// comment edits never shift node paths. Operator tokens (anonymous) are
/// captured onto their parent.
fn lower(
    node: tree_sitter::Node,
    parent: Option<NodeId>,
    field: Option<&'static str>,
    nodes: &mut Vec<SyntaxNode>,
    comments: &mut Vec<Comment>,
) -> NodeId {
    let raw = node.kind();
    let mut kind = kind_for_raw(raw);
    if raw == "for_statement" {
        // Only range-based `for` loops enter the detector vocabulary.
        let has_range = node
            .named_children(&mut node.walk())
            .any(|c| c.kind() == "range_clause");
        kind = if has_range {
            NodeKind::RangeStmt
        } else {
            NodeKind::Other
        };
    }

    let op = node
        .child_by_field_name("operator")
        .filter(|c| !c.is_named())
        .map(|c| c.kind());

    let start_pos = node.start_position();
    let id = NodeId(nodes.len() as u32);
    nodes.push(SyntaxNode {
        kind,
        raw,
        field,
        parent,
        children: Vec::new(),
        op,
        start: node.start_byte() as u32,
        end: node.end_byte() as u32,
        line: start_pos.row as u32 + 1,
        col: start_pos.column as u32 + 1,
    });

    let mut children = Vec::new();
    let mut cursor = node.walk();
    if cursor.goto_first_child() {
        loop {
            let child = cursor.node();
            if child.is_named() {
                if child.kind() == "comment" {
                    comments.push(Comment {
                        start: child.start_byte() as u32,
                        end: child.end_byte() as u32,
                        line: child.start_position().row as u32 + 1,
                        end_line: child.end_position().row as u32 + 1,
                    });
                } else {
                    let child_field = cursor.field_name();
                    let cid = lower(child, Some(id), child_field, nodes, comments);
                    children.push(cid);
                }
            }
            if !cursor.goto_next_sibling() {
                break;
            }
        }
    }
    nodes[id.0 as usize].children = children;
    id
}

fn package_clause_name(nodes: &[SyntaxNode], text: &str) -> Option<String> {
    // The package clause is a top-level child of the source file node.
    let root = &nodes[0];
    for &c in &root.children {
        let n = &nodes[c.0 as usize];
        if n.raw == "package_clause" {
            for &g in &n.children {
                let gn = &nodes[g.0 as usize];
                if gn.raw == "package_identifier" {
                    return Some(text[gn.start as usize..gn.end as usize].to_string());
                }
            }
        }
    }
    None
}

/// Group files into packages keyed by (directory, package name) and assign
/// deterministic ids sorted by import path.
fn assemble(
    root: &Path,
    module_path: Option<String>,
    mut files: Vec<SourceFile>,
    diagnostics: Vec<ParseDiagnostic>,
) -> SourceTree {
    let mut groups: BTreeMap<(String, String), Vec<usize>> = BTreeMap::new();
    for (i, f) in files.iter().enumerate() {
        let dir = match f.path.rfind('/') {
            Some(pos) => f.path[..pos].to_string(),
            None => String::new(),
        };
        groups.entry((dir, f.package_name.clone())).or_default().push(i);
    }

    let mut packages: Vec<Package> = groups
        .into_iter()
        .map(|((dir, name), file_idxs)| {
            let base = match (&module_path, dir.is_empty()) {
                (Some(m), true) => m.clone(),
                (Some(m), false) => format!("{m}/{dir}"),
                (None, true) => name.clone(),
                (None, false) => dir.clone(),
            };
            let is_test = name.ends_with("_test");
            let import_path = if is_test { format!("{base}_test") } else { base };
            Package {
                import_path,
                name,
                dir,
                files: file_idxs.into_iter().map(|i| FileId(i as u32)).collect(),
                is_test,
            }
        })
        .collect();
    packages.sort_by(|a, b| a.import_path.cmp(&b.import_path));

    for (pi, p) in packages.iter().enumerate() {
        for &fid in &p.files {
            files[fid.0 as usize].package = PackageId(pi as u32);
        }
    }

    SourceTree {
        root: root.to_path_buf(),
        module_path,
        files,
        packages,
        funcs: Vec::new(),
        diagnostics,
    }
}

/// Import specs of a file as (explicit alias, import path) pairs. Blank and
/// dot imports yield `Some("_")` / `Some(".")` aliases; callers skip them.
pub(crate) fn file_imports(file: &SourceFile) -> Vec<(Option<String>, String)> {
    let mut out = Vec::new();
    for id in file.descendants(file.root) {
        let n = file.node(id);
        if n.kind != NodeKind::ImportDecl {
            continue;
        }
        let Some(path_node) = file.child_by_field(id, "path") else {
            continue;
        };
        let Some(path) = literal_text(file.text_of(path_node)) else {
            continue;
        };
        let alias = file
            .child_by_field(id, "name")
            .map(|a| file.text_of(a).to_string());
        out.push((alias, path));
    }
    out
}

/// Decode a Go string literal (interpreted or raw) to its value. Returns
/// `None` for non-string tokens. Escape handling covers the sequences that
/// occur in practice; unknown escapes drop the backslash.
pub(crate) fn literal_text(token: &str) -> Option<String> {
    if let Some(inner) = token.strip_prefix('`').and_then(|s| s.strip_suffix('`')) {
        return Some(inner.to_string());
    }
    let inner = token.strip_prefix('"').and_then(|s| s.strip_suffix('"'))?;
    if !inner.contains('\\') {
        return Some(inner.to_string());
    }
    let mut out = String::with_capacity(inner.len());
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        if c != '\\' {
            out.push(c);
            continue;
        }
        match chars.next() {
            Some('n') => out.push('\n'),
            Some('t') => out.push('\t'),
            Some('r') => out.push('\r'),
            Some(other) => out.push(other),
            None => break,
        }
    }
    Some(out)
}

/// Resolve the package an import is usable under in this file: explicit alias
/// if present, otherwise the named package's clause name for in-tree imports,
/// otherwise the last path segment.
pub(crate) fn import_alias(tree: &SourceTree, alias: &Option<String>, path: &str) -> String {
    if let Some(a) = alias {
        return a.clone();
    }
    if let Some(pid) = tree.package_by_import(path) {
        return tree.package(pid).name.clone();
    }
    path.rsplit('/').next().unwrap_or(path).to_string()
}

/// Re-kind `panic(...)` calls and type conversions, which the grammar cannot
/// distinguish from ordinary calls without declaration tables.
fn rekind_calls(tree: &mut SourceTree) {
    // Package-level declaration tables.
    let mut pkg_funcs: HashSet<(PackageId, String)> = HashSet::new();
    let mut pkg_values: HashSet<(PackageId, String)> = HashSet::new();
    let mut pkg_types: HashSet<(PackageId, String)> = HashSet::new();
    for file in &tree.files {
        let pid = file.package;
        for &top in &file.node(file.root).children.clone() {
            let n = file.node(top);
            match n.raw {
                "function_declaration" => {
                    if let Some(name) = file.child_by_field(top, "name") {
                        pkg_funcs.insert((pid, file.text_of(name).to_string()));
                    }
                }
                "type_declaration" => {
                    for spec in file.children(top) {
                        if let Some(name) = file.child_by_field(spec, "name") {
                            pkg_types.insert((pid, file.text_of(name).to_string()));
                        }
                    }
                }
                "var_declaration" | "const_declaration" => {
                    for spec in file.children(top) {
                        for name in file.children_by_field(spec, "name") {
                            pkg_values.insert((pid, file.text_of(name).to_string()));
                        }
                    }
                }
                _ => {}
            }
        }
    }

    // Per-file alias → in-tree package map (conversions through qualified
    // names need it).
    let alias_maps: Vec<BTreeMap<String, PackageId>> = tree
        .files
        .iter()
        .map(|file| {
            let mut m = BTreeMap::new();
            for (alias, path) in file_imports(file) {
                let name = import_alias(tree, &alias, &path);
                if name == "_" || name == "." {
                    continue;
                }
                if let Some(pid) = tree.package_by_import(&path) {
                    m.insert(name, pid);
                }
            }
            m
        })
        .collect();

    for (fi, file) in tree.files.iter_mut().enumerate() {
        let pid = file.package;
        for i in 0..file.nodes.len() {
            if file.nodes[i].kind != NodeKind::CallExpr {
                continue;
            }
            let id = NodeId(i as u32);
            let Some(callee) = file.child_by_field(id, "function") else {
                continue;
            };
            let callee_node = file.node(callee);
            let new_kind = if callee_node.raw == "identifier" {
                let name = file.text_of(callee).to_string();
                if pkg_funcs.contains(&(pid, name.clone()))
                    || pkg_values.contains(&(pid, name.clone()))
                {
                    None
                } else if pkg_types.contains(&(pid, name.clone())) {
                    Some(NodeKind::ConversionExpr)
                } else if name == "panic" {
                    Some(NodeKind::PanicCall)
                } else if BUILTIN_CONVERTIBLE.binary_search(&name.as_str()).is_ok() {
                    Some(NodeKind::ConversionExpr)
                } else {
                    None
                }
            } else if callee_node.raw == "selector_expression" {
                // `pkg.Type(x)` where `pkg` is an in-tree import and `Type` a
                // type declared there.
                let qual = file
                    .child_by_field(callee, "operand")
                    .filter(|&q| file.node(q).raw == "identifier")
                    .map(|q| file.text_of(q).to_string());
                let field = file
                    .child_by_field(callee, "field")
                    .map(|f| file.text_of(f).to_string());
                match (qual, field) {
                    (Some(q), Some(f)) => match alias_maps[fi].get(&q) {
                        Some(&target) if pkg_types.contains(&(target, f.clone())) => {
                            Some(NodeKind::ConversionExpr)
                        }
                        _ => None,
                    },
                    _ => None,
                }
            } else {
                None
            };
            if let Some(k) = new_kind {
                file.nodes[i].kind = k;
            }
        }
    }
}

/// Extract package-level function and method declarations, sorted by
/// (file path, offset). Ids are positions in the sorted vector.
fn collect_funcs(tree: &mut SourceTree) {
    let mut funcs = Vec::new();
    for (fi, file) in tree.files.iter().enumerate() {
        for &top in &file.node(file.root).children {
            let n = file.node(top);
            let receiver = match n.raw {
                "function_declaration" => None,
                "method_declaration" => {
                    Some(receiver_base_name(file, top).unwrap_or_default())
                }
                _ => continue,
            };
            let Some(name_id) = file.child_by_field(top, "name") else {
                continue;
            };
            funcs.push(FuncDecl {
                package: file.package,
                file: FileId(fi as u32),
                decl: top,
                body: file.child_by_field(top, "body"),
                name: file.text_of(name_id).to_string(),
                receiver,
                offset: n.start,
                line: n.line,
                col: n.col,
                is_test_file: file.is_test,
            });
        }
    }
    funcs.sort_by(|a, b| {
        let fa = &tree.files[a.file.0 as usize].path;
        let fb = &tree.files[b.file.0 as usize].path;
        (fa, a.offset).cmp(&(fb, b.offset))
    });
    tree.funcs = funcs;
}

/// Base type name of a method receiver: `(k *Keeper)` → `Keeper`.
fn receiver_base_name(file: &SourceFile, decl: NodeId) -> Option<String> {
    let recv = file.child_by_field(decl, "receiver")?;
    // parameter_list → parameter_declaration → type
    for param in file.children(recv) {
        let ty = file
            .child_by_field(param, "type")
            .or_else(|| file.children(param).last())?;
        // Strip pointers / generics down to the first plain type identifier.
        for d in file.descendants(ty) {
            if file.node(d).raw == "type_identifier" {
                return Some(file.text_of(d).to_string());
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::literal_text;

    #[test]
    fn literal_text_decodes_plain_and_escaped_strings() {
        assert_eq!(literal_text("\"abc\"").as_deref(), Some("abc"));
        assert_eq!(literal_text("`x\\y`").as_deref(), Some("x\\y"));
        assert_eq!(literal_text("\"a\\\"b\\n\"").as_deref(), Some("a\"b\n"));
        assert_eq!(literal_text("42"), None);
    }
}
