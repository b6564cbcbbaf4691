//! Shared helpers for integration tests.

use std::path::PathBuf;

use chainlint_core::source::{bind_types, parse_tree, FuncId, SourceModel};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

pub fn load_model(name: &str) -> SourceModel {
    let tree = parse_tree(&fixture(name), &[], &[]).expect("fixture parses");
    bind_types(tree)
}

/// Look up the unique function `name` (or `(Recv).name`) in `import_path`.
#[allow(dead_code)]
pub fn func(model: &SourceModel, import_path: &str, name: &str) -> FuncId {
    let tree = &model.tree;
    let mut hits = Vec::new();
    for f in tree.func_ids() {
        let fd = tree.func(f);
        if tree.package(fd.package).import_path != import_path {
            continue;
        }
        let rendered = match &fd.receiver {
            Some(r) => format!("({r}).{}", fd.name),
            None => fd.name.clone(),
        };
        if rendered == name || fd.name == name {
            hits.push(f);
        }
    }
    assert_eq!(
        hits.len(),
        1,
        "expected exactly one match for {import_path} {name}, got {}",
        hits.len()
    );
    hits[0]
}
