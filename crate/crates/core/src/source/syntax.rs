//! Node and file types for the syntax model.

use serde::Serialize;

/// Index of a file within its [`super::SourceTree`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct FileId(pub u32);

/// Index of a node within its file's arena.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct NodeId(pub u32);

/// A node addressed across the whole tree.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct NodeRef {
    pub file: FileId,
    pub node: NodeId,
}

/// The construct vocabulary detectors are written against.
///
/// Only these kinds are materialized; all other grammar productions become
/// `Other` (children preserved). `PanicCall` and `ConversionExpr` are not
/// grammar productions in Go — both parse as call expressions — and are
/// re-kinded during tree assembly once package-level declarations are known.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub enum NodeKind {
    CallExpr,
    RangeStmt,
    /// A `go` statement.
    SpawnStmt,
    SelectStmt,
    DeferStmt,
    /// Call of the predeclared `panic` (not shadowed by a package function).
    PanicCall,
    BasicLiteral,
    BinaryExpr,
    SelectorExpr,
    /// Any type syntax: identifiers in type position, map/slice/pointer/...
    /// composites, and qualified types.
    TypeSpelling,
    /// `var` specs and short variable declarations.
    VarDecl,
    ConstDecl,
    /// Struct fields, function parameters, and function results. Mirrors the
    /// subject language's own AST, where all three share one field node.
    FieldDecl,
    /// A call expression whose callee is a type: `float64(x)`, `sdk.Coins(x)`.
    ConversionExpr,
    ImportDecl,
    Other,
}

impl NodeKind {
    /// Stable lowercase name used in fingerprints and debug dumps.
    pub fn name(self) -> &'static str {
        match self {
            NodeKind::CallExpr => "call",
            NodeKind::RangeStmt => "range",
            NodeKind::SpawnStmt => "spawn",
            NodeKind::SelectStmt => "select",
            NodeKind::DeferStmt => "defer",
            NodeKind::PanicCall => "panic",
            NodeKind::BasicLiteral => "lit",
            NodeKind::BinaryExpr => "binary",
            NodeKind::SelectorExpr => "selector",
            NodeKind::TypeSpelling => "type",
            NodeKind::VarDecl => "var",
            NodeKind::ConstDecl => "const",
            NodeKind::FieldDecl => "field",
            NodeKind::ConversionExpr => "conv",
            NodeKind::ImportDecl => "import",
            NodeKind::Other => "other",
        }
    }
}

/// One node in a file's arena. Positions are 1-based; `start`/`end` are byte
/// offsets into the file text, so slicing the text always reproduces the
/// node's source.
#[derive(Clone, Debug)]
pub struct SyntaxNode {
    pub kind: NodeKind,
    /// Raw grammar production name, e.g. `call_expression`.
    pub raw: &'static str,
    /// Grammar field name connecting this node to its parent, if any.
    pub field: Option<&'static str>,
    pub parent: Option<NodeId>,
    pub children: Vec<NodeId>,
    /// Operator token for binary/unary/assignment nodes (`"+"`, `"&&"`, ...).
    pub op: Option<&'static str>,
    pub start: u32,
    pub end: u32,
    pub line: u32,
    pub col: u32,
}

/// A comment, kept out of the node tree so that comment-only edits never
/// shift node paths (fingerprints must survive adding a suppression line).
#[derive(Clone, Debug)]
pub struct Comment {
    pub start: u32,
    pub end: u32,
    /// 1-based line the comment starts on.
    pub line: u32,
    /// 1-based line the comment ends on (block comments may span lines).
    pub end_line: u32,
}

/// A parsed file: immutable text plus its node arena.
#[derive(Clone, Debug)]
pub struct SourceFile {
    /// Path relative to the tree root, always '/'-separated.
    pub path: String,
    pub text: String,
    /// Package clause name (`package foo`).
    pub package_name: String,
    /// Assigned during tree assembly.
    pub package: super::PackageId,
    /// File name ends in `_test.go`.
    pub is_test: bool,
    pub root: NodeId,
    pub nodes: Vec<SyntaxNode>,
    pub comments: Vec<Comment>,
}

impl SourceFile {
    pub fn node(&self, id: NodeId) -> &SyntaxNode {
        &self.nodes[id.0 as usize]
    }

    /// Source text of a node.
    pub fn text_of(&self, id: NodeId) -> &str {
        let n = self.node(id);
        &self.text[n.start as usize..n.end as usize]
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        self.node(id).children.iter().copied()
    }

    /// First child attached to the parent through the given grammar field.
    pub fn child_by_field(&self, id: NodeId, field: &str) -> Option<NodeId> {
        self.children(id)
            .find(|&c| self.node(c).field == Some(field))
    }

    /// All children attached through the given grammar field.
    pub fn children_by_field<'a>(
        &'a self,
        id: NodeId,
        field: &'a str,
    ) -> impl Iterator<Item = NodeId> + 'a {
        self.children(id)
            .filter(move |&c| self.node(c).field == Some(field))
    }

    /// Pre-order traversal of the subtree rooted at `id` (inclusive).
    pub fn descendants(&self, id: NodeId) -> Descendants<'_> {
        Descendants {
            file: self,
            stack: vec![id],
        }
    }

    /// The nearest ancestor (excluding `id` itself) matching the predicate.
    pub fn ancestor_where(
        &self,
        id: NodeId,
        mut pred: impl FnMut(&SyntaxNode) -> bool,
    ) -> Option<NodeId> {
        let mut cur = self.node(id).parent;
        while let Some(p) = cur {
            if pred(self.node(p)) {
                return Some(p);
            }
            cur = self.node(p).parent;
        }
        None
    }
}

/// Iterator over a subtree in pre-order.
pub struct Descendants<'a> {
    file: &'a SourceFile,
    stack: Vec<NodeId>,
}

impl<'a> Iterator for Descendants<'a> {
    type Item = NodeId;

    fn next(&mut self) -> Option<NodeId> {
        let id = self.stack.pop()?;
        let n = self.file.node(id);
        // Push in reverse so children pop in source order.
        self.stack.extend(n.children.iter().rev());
        Some(id)
    }
}

/// Map a raw grammar production to the detector vocabulary.
///
/// `for` statements only become `RangeStmt` when they actually carry a range
/// clause; that adjustment happens in the lowering pass which can see the
/// children. Calls are re-kinded to `PanicCall` / `ConversionExpr` during
/// assembly.
pub(crate) fn kind_for_raw(raw: &str) -> NodeKind {
    match raw {
        "call_expression" => NodeKind::CallExpr,
        "go_statement" => NodeKind::SpawnStmt,
        "select_statement" => NodeKind::SelectStmt,
        "defer_statement" => NodeKind::DeferStmt,
        "int_literal" | "float_literal" | "imaginary_literal" | "rune_literal"
        | "interpreted_string_literal" | "raw_string_literal" => NodeKind::BasicLiteral,
        "binary_expression" => NodeKind::BinaryExpr,
        "selector_expression" => NodeKind::SelectorExpr,
        "type_identifier" | "qualified_type" | "map_type" | "slice_type" | "array_type"
        | "pointer_type" | "channel_type" | "function_type" | "interface_type"
        | "struct_type" | "generic_type" => NodeKind::TypeSpelling,
        "var_spec" | "short_var_declaration" => NodeKind::VarDecl,
        "const_spec" => NodeKind::ConstDecl,
        "field_declaration" | "parameter_declaration" | "variadic_parameter_declaration" => {
            NodeKind::FieldDecl
        }
        "import_spec" => NodeKind::ImportDecl,
        _ => NodeKind::Other,
    }
}
