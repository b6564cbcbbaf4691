//! Source-module contract tests: parsing, diagnostics, determinism, binding.

mod common;

use chainlint_core::source::{
    bind_types, parse_tree, Classification, NodeKind, NodeRef, SourceModel,
};
use chainlint_core::Error;
use common::fixture;

#[test]
fn simple_tree_has_two_packages_and_no_diagnostics() {
    let tree = parse_tree(&fixture("trees/simple"), &[], &[]).unwrap();
    assert_eq!(tree.packages.len(), 2);
    assert_eq!(tree.diagnostics.len(), 0);
    assert_eq!(tree.files.len(), 3);
    assert_eq!(tree.module_path.as_deref(), Some("example.com/simple"));

    let paths: Vec<&str> = tree
        .packages
        .iter()
        .map(|p| p.import_path.as_str())
        .collect();
    assert_eq!(
        paths,
        ["example.com/simple/store", "example.com/simple/util"]
    );

    let names: Vec<&str> = tree.funcs.iter().map(|f| f.name.as_str()).collect();
    assert_eq!(names, ["Keys", "New", "Total", "Describe", "Label"]);
}

#[test]
fn malformed_file_becomes_diagnostic_and_siblings_survive() {
    let tree = parse_tree(&fixture("trees/malformed"), &[], &[]).unwrap();
    assert_eq!(tree.diagnostics.len(), 1);
    assert_eq!(tree.diagnostics[0].path, "bad/broken.go");
    // Both packages remain: `bad` keeps its intact file.
    assert_eq!(tree.packages.len(), 2);
    assert!(tree.funcs.iter().any(|f| f.name == "Intact"));
    assert!(tree.funcs.iter().all(|f| f.name != "Broken"));
}

#[test]
fn empty_tree_is_fatal() {
    let dir = tempfile::tempdir().unwrap();
    let err = parse_tree(dir.path(), &[], &[]).unwrap_err();
    assert!(matches!(err, Error::EmptyTree(_)));
    assert!(!err.is_usage());
}

#[test]
fn missing_root_is_usage_error() {
    let err = parse_tree(std::path::Path::new("/nonexistent/nowhere"), &[], &[]).unwrap_err();
    assert!(matches!(err, Error::RootNotFound(_)));
    assert!(err.is_usage());
}

#[test]
fn exclude_globs_drop_files() {
    let tree = parse_tree(
        &fixture("trees/simple"),
        &[],
        &["util/**".to_string()],
    )
    .unwrap();
    assert_eq!(tree.packages.len(), 1);
    assert_eq!(tree.packages[0].import_path, "example.com/simple/store");
}

/// Structural digest used to compare two parses of the same tree.
fn digest(model: &SourceModel) -> String {
    let tree = &model.tree;
    let mut out = String::new();
    for p in &tree.packages {
        out.push_str(&format!("pkg {} {} files={}\n", p.import_path, p.name, p.files.len()));
    }
    for f in tree.func_ids() {
        out.push_str(&tree.func_key(f));
        out.push('\n');
    }
    for file in &tree.files {
        out.push_str(&format!("file {} nodes={}\n", file.path, file.nodes.len()));
    }
    out
}

#[test]
fn parsing_is_deterministic() {
    let a = common::load_model("trees/simple");
    let b = common::load_model("trees/simple");
    assert_eq!(digest(&a), digest(&b));
}

#[test]
fn positions_reproduce_node_text() {
    let tree = parse_tree(&fixture("trees/simple"), &[], &[]).unwrap();
    for file in &tree.files {
        let mut last_start = 0u32;
        for id in file.descendants(file.root) {
            let n = file.node(id);
            assert!(n.start <= n.end, "byte range sane");
            assert!(
                (n.end as usize) <= file.text.len(),
                "range inside file text"
            );
            // Positions are monotone in pre-order within a parent's children;
            // at minimum the root-relative start never exceeds the file.
            let _ = last_start;
            last_start = n.start;
            // Re-slicing must reproduce the node's text without panicking.
            let _ = file.text_of(id);
        }
    }
}

#[test]
fn range_over_declared_map_classifies_map() {
    let model = common::load_model("trees/simple");
    let tree = &model.tree;
    let file_id = tree
        .files
        .iter()
        .position(|f| f.path == "store/store.go")
        .map(|i| chainlint_core::source::FileId(i as u32))
        .unwrap();
    let file = tree.file(file_id);
    let range = file
        .descendants(file.root)
        .find(|&id| file.node(id).kind == NodeKind::RangeStmt)
        .expect("range statement present");
    let clause = file
        .children(range)
        .find(|&c| file.node(c).raw == "range_clause")
        .unwrap();
    let operand = file.child_by_field(clause, "right").unwrap();
    assert!(matches!(
        model.classify_node(NodeRef {
            file: file_id,
            node: operand
        }),
        Classification::Map(..)
    ));
}

#[test]
fn binding_covers_spec_examples() {
    // make(map[...]...) + range, uintptr parameter, out-of-tree call result.
    let dir = tempfile::tempdir().unwrap();
    std::fs::write(dir.path().join("go.mod"), "module example.com/bind\n").unwrap();
    std::fs::write(
        dir.path().join("main.go"),
        r#"package main

import "example.com/elsewhere/ext"

func handler() {
	m := make(map[string]int)
	for k := range m {
		_ = k
	}
	v := ext.Fetch()
	_ = v
}

func offset(p uintptr) uintptr {
	return p
}
"#,
    )
    .unwrap();
    let tree = parse_tree(dir.path(), &[], &[]).unwrap();
    let model = bind_types(tree);
    let file_id = chainlint_core::source::FileId(0);
    let file = model.tree.file(file_id);

    // Range operand over make(map[string]int) classifies MapType.
    let clause = file
        .descendants(file.root)
        .find(|&id| file.node(id).raw == "range_clause")
        .unwrap();
    let operand = file.child_by_field(clause, "right").unwrap();
    assert!(matches!(
        model.classify_node(NodeRef { file: file_id, node: operand }),
        Classification::Map(..)
    ));

    // uintptr parameter spelling classifies PlatformDependent.
    let uintptr_spelling = file
        .descendants(file.root)
        .find(|&id| file.node(id).raw == "type_identifier" && file.text_of(id) == "uintptr")
        .unwrap();
    assert_eq!(
        model.classify_node(NodeRef { file: file_id, node: uintptr_spelling }),
        Classification::Platform
    );

    // Out-of-tree call result is Unknown (and only Unknown).
    let env_v = file
        .descendants(file.root)
        .find(|&id| {
            file.node(id).raw == "call_expression" && file.text_of(id).starts_with("ext.Fetch")
        })
        .unwrap();
    assert_eq!(
        model.classify_node(NodeRef { file: file_id, node: env_v }),
        Classification::Unknown
    );
}

#[test]
fn map_never_also_classifies_float() {
    // One node, one classification: spot-check every node of the fixture.
    let model = common::load_model("trees/simple");
    for (fi, file) in model.tree.files.iter().enumerate() {
        for id in file.descendants(file.root) {
            let c = model.classify_node(NodeRef {
                file: chainlint_core::source::FileId(fi as u32),
                node: id,
            });
            if matches!(c, Classification::Map(..)) {
                assert!(!matches!(c, Classification::Float));
            }
        }
    }
}
