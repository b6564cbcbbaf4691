//! Assembled source tree: packages, function declarations, diagnostics.

use std::path::PathBuf;

use serde::Serialize;

use super::syntax::{FileId, NodeId, SourceFile};

/// Index of a package within a [`SourceTree`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct PackageId(pub u32);

/// Index of a function declaration within a [`SourceTree`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct FuncId(pub u32);

/// A Go package: the set of files in one directory sharing a package clause.
///
/// An external test package (`foo_test` in the same directory as `foo`) is a
/// distinct `Package`; its import path gets a `_test` suffix so import paths
/// stay unique within the tree.
#[derive(Clone, Debug)]
pub struct Package {
    pub import_path: String,
    pub name: String,
    /// Directory relative to the tree root ('/'-separated, "" at the root).
    pub dir: String,
    pub files: Vec<FileId>,
    /// True for external test packages (package name ends in `_test`).
    pub is_test: bool,
}

/// A non-fatal parse problem. The offending file is excluded from the model.
#[derive(Clone, Debug, Serialize)]
pub struct ParseDiagnostic {
    pub path: String,
    pub line: u32,
    pub col: u32,
    pub message: String,
}

/// A package-level function or method declaration.
///
/// The identity of a declaration is its index in [`SourceTree::funcs`]; the
/// `(file, offset)` pair keeps redeclarations under build constraints
/// distinct, since all files are parsed regardless of build tags.
#[derive(Clone, Debug)]
pub struct FuncDecl {
    pub package: PackageId,
    pub file: FileId,
    /// The `function_declaration` / `method_declaration` node.
    pub decl: NodeId,
    /// Absent for assembly-backed declarations (no body in Go source).
    pub body: Option<NodeId>,
    pub name: String,
    /// Receiver base type name with any pointer stripped (`*Keeper` → `Keeper`).
    pub receiver: Option<String>,
    pub offset: u32,
    pub line: u32,
    pub col: u32,
    /// Declared in a `_test.go` file.
    pub is_test_file: bool,
}

/// The parsed tree: immutable once assembled, shared read-only downstream.
#[derive(Debug)]
pub struct SourceTree {
    pub root: PathBuf,
    /// Module path from `go.mod`, if present.
    pub module_path: Option<String>,
    pub files: Vec<SourceFile>,
    pub packages: Vec<Package>,
    /// Sorted by (file path, offset); `FuncId` indexes into this.
    pub funcs: Vec<FuncDecl>,
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl SourceTree {
    pub fn file(&self, id: FileId) -> &SourceFile {
        &self.files[id.0 as usize]
    }

    pub fn package(&self, id: PackageId) -> &Package {
        &self.packages[id.0 as usize]
    }

    pub fn func(&self, id: FuncId) -> &FuncDecl {
        &self.funcs[id.0 as usize]
    }

    pub fn func_ids(&self) -> impl Iterator<Item = FuncId> {
        (0..self.funcs.len() as u32).map(FuncId)
    }

    /// Package lookup by import path (primary packages only, not `_test`).
    pub fn package_by_import(&self, import_path: &str) -> Option<PackageId> {
        self.packages
            .iter()
            .position(|p| p.import_path == import_path)
            .map(|i| PackageId(i as u32))
    }

    /// Human-readable identity: `importPath.Name` or `importPath.(Recv).Name`.
    pub fn func_display(&self, id: FuncId) -> String {
        let f = self.func(id);
        let pkg = &self.package(f.package).import_path;
        match &f.receiver {
            Some(r) => format!("{pkg}.({r}).{}", f.name),
            None => format!("{pkg}.{}", f.name),
        }
    }

    /// Fully disambiguated identity including the declaration site. Used in
    /// dumps where redeclarations must stay distinct.
    pub fn func_key(&self, id: FuncId) -> String {
        let f = self.func(id);
        format!(
            "{}@{}:{}",
            self.func_display(id),
            self.file(f.file).path,
            f.offset
        )
    }

    /// The innermost function declaration whose extent contains `node`.
    pub fn enclosing_func(&self, file: FileId, node: NodeId) -> Option<FuncId> {
        let target = self.file(file).node(node);
        let mut best: Option<(u32, FuncId)> = None;
        for (i, f) in self.funcs.iter().enumerate() {
            if f.file != file {
                continue;
            }
            let decl = self.file(file).node(f.decl);
            if decl.start <= target.start && target.end <= decl.end {
                // Innermost wins; declarations never partially overlap.
                let width = decl.end - decl.start;
                if best.map_or(true, |(w, _)| width < w) {
                    best = Some((width, FuncId(i as u32)));
                }
            }
        }
        best.map(|(_, id)| id)
    }
}
