//! Source model: parse a Go tree into an immutable syntax model and attach
//! best-effort types.
//!
//! The model deliberately materializes only the construct vocabulary the
//! detectors consume ([`NodeKind`]); everything else collapses to
//! [`NodeKind::Other`] with children preserved. The raw grammar production
//! name is kept on every node so the binder and call-graph builder can see
//! grammar detail that detectors do not need.

mod model;
mod parse;
mod syntax;
mod types;

pub use model::{FuncDecl, FuncId, Package, PackageId, ParseDiagnostic, SourceTree};
pub use parse::parse_tree;
pub(crate) use parse::literal_text;
pub use syntax::{Comment, FileId, NodeId, NodeKind, NodeRef, SourceFile, SyntaxNode};
pub use types::{
    bind_types, Classification, FuncSig, ImportTarget, NamedInfo, NamedKind, SourceModel, TypeId,
};
