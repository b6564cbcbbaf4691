//! Best-effort, intra-tree, flow-insensitive type binding.
//!
//! The binder attaches a [`TypeId`] to every expression node it can explain
//! from declared types, literal forms, built-in constructors (`make`/`new`),
//! composite literals, struct field declarations, and single-assignment local
//! inference. Everything else is `Unknown`, and detectors never fire on
//! `Unknown` — resolution failures degrade to silence, not noise.

use std::collections::{BTreeMap, HashMap, HashSet};

use super::model::{FuncId, PackageId, SourceTree};
use super::parse::{file_imports, import_alias, literal_text};
use super::syntax::{FileId, NodeId, NodeKind, NodeRef};

/// Interned type handle. `TypeId` values are only meaningful against the
/// [`SourceModel`] that produced them.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TypeId(u32);

const UNKNOWN: TypeId = TypeId(0);
const OTHER: TypeId = TypeId(1);
const FLOAT: TypeId = TypeId(2);
const PLATFORM: TypeId = TypeId(3);
const STR: TypeId = TypeId(4);
/// Sentinel for "not yet typed" in the per-node table.
const UNTYPED: TypeId = TypeId(u32::MAX);

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
enum TypeData {
    Unknown,
    /// Known-but-uninteresting: fixed-width ints, bools, slices, channels, ...
    Other,
    Float,
    Platform,
    Str,
    Map(TypeId, TypeId),
    Pointer(TypeId),
    Named {
        pkg: Option<PackageId>,
        path: String,
        name: String,
    },
}

/// Detector-facing classification of a type, mirroring the rule contracts.
///
/// Named types whose underlying type is a map or a float classify as
/// `Map`/`Float` (rules 2 and 5 care about the semantics, not the name);
/// named types over anything else keep their `Named` identity. `Platform`
/// is only ever produced by the literal spellings `int`/`uint`/`uintptr`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Classification {
    Map(TypeId, TypeId),
    Float,
    Platform,
    Named { import_path: String, name: String },
    Str,
    Unknown,
    Other,
}

/// How a named type is defined.
#[derive(Clone, Debug)]
pub enum NamedKind {
    Struct { fields: Vec<(String, TypeId)> },
    /// Method names with arity, embedded in-tree interfaces flattened.
    Interface { methods: Vec<(String, usize)> },
    Alias { underlying: TypeId },
}

/// A package-level type declaration.
#[derive(Clone, Debug)]
pub struct NamedInfo {
    pub file: FileId,
    /// The `type_spec` / `type_alias` node.
    pub node: NodeId,
    pub is_test: bool,
    pub kind: NamedKind,
}

/// Signature of a function declaration, parallel to `SourceTree::funcs`.
#[derive(Clone, Debug, Default)]
pub struct FuncSig {
    /// Expanded parameter list: `(a, b int)` yields two entries.
    pub params: Vec<(Option<String>, TypeId)>,
    pub results: Vec<TypeId>,
    /// Receiver name and type (pointer kept).
    pub receiver: Option<(Option<String>, TypeId)>,
}

impl FuncSig {
    pub fn arity(&self) -> usize {
        self.params.len()
    }
}

/// Import visible in one file.
#[derive(Clone, Debug)]
pub struct ImportTarget {
    pub path: String,
    /// Set when the path names a package inside the analyzed tree.
    pub pkg: Option<PackageId>,
}

/// The bound model: the tree plus every table downstream phases read.
pub struct SourceModel {
    pub tree: SourceTree,
    types: Vec<TypeData>,
    /// Per file, parallel to its node arena.
    node_types: Vec<Vec<TypeId>>,
    /// Package-level type declarations (non-test declarations win collisions).
    pub named: BTreeMap<(PackageId, String), NamedInfo>,
    /// Package-level functions by name, non-test declarations only.
    pub pkg_funcs: BTreeMap<(PackageId, String), FuncId>,
    /// Methods by (package, receiver base name, method name), non-test only.
    pub methods: BTreeMap<(PackageId, String, String), FuncId>,
    /// Method set (name, arity) per (package, receiver base), non-test only.
    pub method_sets: BTreeMap<(PackageId, String), Vec<(String, usize)>>,
    /// Signatures parallel to `tree.funcs`.
    pub sigs: Vec<FuncSig>,
    /// Per-file alias → import target ("_" and "." entries excluded).
    imports: Vec<BTreeMap<String, ImportTarget>>,
    /// Package-level var/const types.
    pkg_values: BTreeMap<(PackageId, String), TypeId>,
    /// Package-level consts whose initializer is a single string literal.
    pub string_consts: BTreeMap<(PackageId, String), NodeRef>,
    /// Final local environment per function (merged, flow-insensitive).
    envs: Vec<BTreeMap<String, TypeId>>,
}

/// Bind types across the tree. Single-threaded by design: interning order is
/// then source order, making repeated runs structurally identical.
pub fn bind_types(tree: SourceTree) -> SourceModel {
    let mut b = Binder::new(tree);
    b.collect_imports();
    b.register_named();
    b.fill_named_kinds();
    b.collect_funcs();
    b.collect_pkg_values();
    b.build_envs();
    b.type_everything();
    b.finish()
}

impl SourceModel {
    /// The bound type of a node (`Unknown` when binding could not explain it).
    pub fn type_of(&self, at: NodeRef) -> TypeId {
        let t = self.node_types[at.file.0 as usize][at.node.0 as usize];
        if t == UNTYPED {
            UNKNOWN
        } else {
            t
        }
    }

    pub fn classify_node(&self, at: NodeRef) -> Classification {
        self.classify(self.type_of(at))
    }

    /// Classify a type, resolving named types' underlying maps/floats.
    pub fn classify(&self, t: TypeId) -> Classification {
        self.classify_inner(t, &mut HashSet::new())
    }

    fn classify_inner(&self, t: TypeId, seen: &mut HashSet<TypeId>) -> Classification {
        match &self.types[t.0 as usize] {
            TypeData::Unknown => Classification::Unknown,
            TypeData::Other | TypeData::Pointer(_) => Classification::Other,
            TypeData::Float => Classification::Float,
            TypeData::Platform => Classification::Platform,
            TypeData::Str => Classification::Str,
            TypeData::Map(k, v) => Classification::Map(*k, *v),
            TypeData::Named { pkg, path, name } => {
                let named = Classification::Named {
                    import_path: path.clone(),
                    name: name.clone(),
                };
                let Some(p) = pkg else { return named };
                if !seen.insert(t) {
                    return named;
                }
                match self.named.get(&(*p, name.clone())).map(|n| &n.kind) {
                    Some(NamedKind::Alias { underlying }) => {
                        match self.classify_inner(*underlying, seen) {
                            c @ (Classification::Map(..) | Classification::Float) => c,
                            _ => named,
                        }
                    }
                    _ => named,
                }
            }
        }
    }

    /// Strip one level of pointer. Method calls in Go auto-dereference, so
    /// consumers resolving methods apply this before classification.
    pub fn deref(&self, t: TypeId) -> TypeId {
        match self.types[t.0 as usize] {
            TypeData::Pointer(inner) => inner,
            _ => t,
        }
    }

    /// Convenience: does the node's type classify as a map?
    pub fn is_map(&self, at: NodeRef) -> bool {
        matches!(self.classify_node(at), Classification::Map(..))
    }

    /// Convenience: does the node's type classify as floating?
    pub fn is_float(&self, at: NodeRef) -> bool {
        matches!(self.classify_node(at), Classification::Float)
    }

    pub fn imports_of(&self, file: FileId) -> &BTreeMap<String, ImportTarget> {
        &self.imports[file.0 as usize]
    }

    /// Resolve an identifier used as a qualifier (`q` in `q.Name`) to the
    /// import path it denotes, unless a local of the enclosing function or a
    /// package-level value shadows it.
    pub fn qualifier_path(
        &self,
        file: FileId,
        enclosing: Option<FuncId>,
        name: &str,
    ) -> Option<&str> {
        if let Some(f) = enclosing {
            if self.envs[f.0 as usize].contains_key(name) {
                return None;
            }
        }
        let pid = self.tree.file(file).package;
        if self.pkg_values.contains_key(&(pid, name.to_string())) {
            return None;
        }
        self.imports[file.0 as usize]
            .get(name)
            .map(|t| t.path.as_str())
    }

    /// Local environment of a function (post-merge).
    pub fn env_of(&self, f: FuncId) -> &BTreeMap<String, TypeId> {
        &self.envs[f.0 as usize]
    }

    /// The package-level value type table (used by tests and dumps).
    pub fn pkg_value_type(&self, pkg: PackageId, name: &str) -> Option<TypeId> {
        self.pkg_values.get(&(pkg, name.to_string())).copied()
    }
}

// ---------------------------------------------------------------------------
// Binder
// ---------------------------------------------------------------------------

struct Binder {
    tree: SourceTree,
    types: Vec<TypeData>,
    intern: HashMap<TypeData, TypeId>,
    node_types: Vec<Vec<TypeId>>,
    named: BTreeMap<(PackageId, String), NamedInfo>,
    pkg_funcs: BTreeMap<(PackageId, String), FuncId>,
    methods: BTreeMap<(PackageId, String, String), FuncId>,
    method_sets: BTreeMap<(PackageId, String), Vec<(String, usize)>>,
    sigs: Vec<FuncSig>,
    imports: Vec<BTreeMap<String, ImportTarget>>,
    pkg_values: BTreeMap<(PackageId, String), TypeId>,
    string_consts: BTreeMap<(PackageId, String), NodeRef>,
    envs: Vec<BTreeMap<String, TypeId>>,
}

impl Binder {
    fn new(tree: SourceTree) -> Self {
        let mut types = Vec::new();
        let mut intern = HashMap::new();
        for (i, d) in [
            TypeData::Unknown,
            TypeData::Other,
            TypeData::Float,
            TypeData::Platform,
            TypeData::Str,
        ]
        .into_iter()
        .enumerate()
        {
            intern.insert(d.clone(), TypeId(i as u32));
            types.push(d);
        }
        let node_types = tree
            .files
            .iter()
            .map(|f| vec![UNTYPED; f.nodes.len()])
            .collect();
        Binder {
            node_types,
            types,
            intern,
            named: BTreeMap::new(),
            pkg_funcs: BTreeMap::new(),
            methods: BTreeMap::new(),
            method_sets: BTreeMap::new(),
            sigs: Vec::new(),
            imports: Vec::new(),
            pkg_values: BTreeMap::new(),
            string_consts: BTreeMap::new(),
            envs: Vec::new(),
            tree,
        }
    }

    fn intern(&mut self, d: TypeData) -> TypeId {
        if let Some(&t) = self.intern.get(&d) {
            return t;
        }
        let t = TypeId(self.types.len() as u32);
        self.types.push(d.clone());
        self.intern.insert(d, t);
        t
    }

    fn collect_imports(&mut self) {
        let mut all = Vec::with_capacity(self.tree.files.len());
        for file in &self.tree.files {
            let mut m = BTreeMap::new();
            for (alias, path) in file_imports(file) {
                let name = import_alias(&self.tree, &alias, &path);
                if name == "_" || name == "." {
                    continue;
                }
                let pkg = self.tree.package_by_import(&path);
                m.insert(name, ImportTarget { path, pkg });
            }
            all.push(m);
        }
        self.imports = all;
    }

    /// Phase 1: register type declaration names so spellings can resolve
    /// forward references. Kinds are filled in phase 2.
    fn register_named(&mut self) {
        for (fi, file) in self.tree.files.iter().enumerate() {
            for &top in &file.node(file.root).children {
                if file.node(top).raw != "type_declaration" {
                    continue;
                }
                for spec in file.children(top) {
                    let raw = file.node(spec).raw;
                    if raw != "type_spec" && raw != "type_alias" {
                        continue;
                    }
                    let Some(name_id) = file.child_by_field(spec, "name") else {
                        continue;
                    };
                    let key = (file.package, file.text_of(name_id).to_string());
                    let info = NamedInfo {
                        file: FileId(fi as u32),
                        node: spec,
                        is_test: file.is_test,
                        kind: NamedKind::Alias { underlying: UNKNOWN },
                    };
                    match self.named.get(&key) {
                        // Non-test declarations win; first declaration wins ties
                        // (build-constraint duplicates).
                        Some(existing) if !existing.is_test || file.is_test => {}
                        _ => {
                            self.named.insert(key, info);
                        }
                    }
                }
            }
        }
    }

    fn fill_named_kinds(&mut self) {
        let keys: Vec<(PackageId, String)> = self.named.keys().cloned().collect();
        for key in keys {
            let info = &self.named[&key];
            let (fid, spec) = (info.file, info.node);
            let file = self.tree.file(fid);
            let Some(ty) = file.child_by_field(spec, "type") else {
                continue;
            };
            let kind = match file.node(ty).raw {
                "struct_type" => NamedKind::Struct {
                    fields: self.struct_fields(fid, ty),
                },
                "interface_type" => NamedKind::Interface {
                    methods: self.interface_methods(fid, ty, &mut HashSet::new()),
                },
                _ => NamedKind::Alias {
                    underlying: self.spell_type(fid, ty),
                },
            };
            self.named.get_mut(&key).unwrap().kind = kind;
        }
    }

    fn struct_fields(&mut self, fid: FileId, struct_ty: NodeId) -> Vec<(String, TypeId)> {
        let file = self.tree.file(fid);
        let mut decls = Vec::new();
        for field_list in file.children(struct_ty) {
            if file.node(field_list).raw != "field_declaration_list" {
                continue;
            }
            for fd in file.children(field_list) {
                if file.node(fd).raw != "field_declaration" {
                    continue;
                }
                let ty = file.child_by_field(fd, "type");
                let names: Vec<String> = file
                    .children_by_field(fd, "name")
                    .map(|n| file.text_of(n).to_string())
                    .collect();
                decls.push((names, ty));
            }
        }
        let mut out = Vec::new();
        for (names, ty) in decls {
            let Some(ty) = ty else { continue };
            let t = self.spell_type(fid, ty);
            if names.is_empty() {
                // Embedded field: usable under its base type name.
                if let Some(base) = self.base_type_name(fid, ty) {
                    out.push((base, t));
                }
            } else {
                for n in names {
                    out.push((n, t));
                }
            }
        }
        out
    }

    fn base_type_name(&self, fid: FileId, ty: NodeId) -> Option<String> {
        let file = self.tree.file(fid);
        for d in file.descendants(ty) {
            if file.node(d).raw == "type_identifier" {
                return Some(file.text_of(d).to_string());
            }
        }
        None
    }

    /// Flatten an interface's method set (name, arity), following in-tree
    /// embedded interfaces.
    fn interface_methods(
        &self,
        fid: FileId,
        iface_ty: NodeId,
        seen: &mut HashSet<(PackageId, String)>,
    ) -> Vec<(String, usize)> {
        let file = self.tree.file(fid);
        let mut out = Vec::new();
        for elem in file.children(iface_ty) {
            let raw = file.node(elem).raw;
            if raw == "method_elem" || raw == "method_spec" {
                let Some(name) = file.child_by_field(elem, "name") else {
                    continue;
                };
                let arity = file
                    .child_by_field(elem, "parameters")
                    .map(|p| self.param_count(fid, p))
                    .unwrap_or(0);
                out.push((file.text_of(name).to_string(), arity));
            } else if raw == "type_identifier" || raw == "type_elem" || raw == "qualified_type" {
                // Embedded interface (possibly wrapped in a type_elem).
                if let Some((pkg, name)) = self.named_ref_of(fid, elem) {
                    if seen.insert((pkg, name.clone())) {
                        if let Some(info) = self.named.get(&(pkg, name)) {
                            if let NamedKind::Interface { methods } = &info.kind {
                                out.extend(methods.iter().cloned());
                            } else if let Some(ty) =
                                self.tree.file(info.file).child_by_field(info.node, "type")
                            {
                                if self.tree.file(info.file).node(ty).raw == "interface_type" {
                                    out.extend(self.interface_methods(info.file, ty, seen));
                                }
                            }
                        }
                    }
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    /// Resolve a type reference node to an in-tree named declaration.
    fn named_ref_of(&self, fid: FileId, node: NodeId) -> Option<(PackageId, String)> {
        let file = self.tree.file(fid);
        let mut node = node;
        // Unwrap wrappers like type_elem.
        loop {
            let n = file.node(node);
            match n.raw {
                "type_elem" => {
                    node = file.children(node).next()?;
                }
                "type_identifier" => {
                    let name = file.text_of(node).to_string();
                    let key = (file.package, name);
                    return self.named.contains_key(&key).then_some(key);
                }
                "qualified_type" => {
                    let pkg_id = file.child_by_field(node, "package")?;
                    let name_id = file.child_by_field(node, "name")?;
                    let alias = file.text_of(pkg_id);
                    let target = self.imports[fid.0 as usize].get(alias)?.pkg?;
                    let key = (target, file.text_of(name_id).to_string());
                    return self.named.contains_key(&key).then_some(key);
                }
                _ => return None,
            }
        }
    }

    /// Number of parameters a `parameter_list` declares (names expanded).
    fn param_count(&self, fid: FileId, list: NodeId) -> usize {
        let file = self.tree.file(fid);
        let mut n = 0;
        for p in file.children(list) {
            match file.node(p).raw {
                "parameter_declaration" => {
                    let names = file.children_by_field(p, "name").count();
                    n += names.max(1);
                }
                "variadic_parameter_declaration" => n += 1,
                _ => {}
            }
        }
        n
    }

    /// Resolve a type spelling to an interned type.
    fn spell_type(&mut self, fid: FileId, ty: NodeId) -> TypeId {
        let file = self.tree.file(fid);
        let raw = file.node(ty).raw;
        match raw {
            "type_identifier" => {
                let name = file.text_of(ty);
                match name {
                    "float32" | "float64" | "complex64" | "complex128" => FLOAT,
                    "int" | "uint" | "uintptr" => PLATFORM,
                    "string" => STR,
                    "bool" | "byte" | "rune" | "error" | "any" | "int8" | "int16" | "int32"
                    | "int64" | "uint8" | "uint16" | "uint32" | "uint64" | "comparable" => OTHER,
                    _ => {
                        let key = (file.package, name.to_string());
                        if self.named.contains_key(&key) {
                            let path = self.tree.package(key.0).import_path.clone();
                            self.intern(TypeData::Named {
                                pkg: Some(key.0),
                                path,
                                name: key.1,
                            })
                        } else {
                            UNKNOWN
                        }
                    }
                }
            }
            "qualified_type" => {
                let (Some(pkg_id), Some(name_id)) = (
                    file.child_by_field(ty, "package"),
                    file.child_by_field(ty, "name"),
                ) else {
                    return UNKNOWN;
                };
                let alias = file.text_of(pkg_id).to_string();
                let name = file.text_of(name_id).to_string();
                match self.imports[fid.0 as usize].get(&alias) {
                    Some(t) => {
                        let (path, pkg) = (t.path.clone(), t.pkg);
                        self.intern(TypeData::Named { pkg, path, name })
                    }
                    None => UNKNOWN,
                }
            }
            "map_type" => {
                let key = file.child_by_field(ty, "key");
                let value = file.child_by_field(ty, "value");
                let k = match key {
                    Some(k) => self.spell_type(fid, k),
                    None => UNKNOWN,
                };
                let v = match value {
                    Some(v) => self.spell_type(fid, v),
                    None => UNKNOWN,
                };
                self.intern(TypeData::Map(k, v))
            }
            "pointer_type" => {
                let child = self.tree.file(fid).children(ty).next();
                let inner = match child {
                    Some(c) => self.spell_type(fid, c),
                    None => UNKNOWN,
                };
                self.intern(TypeData::Pointer(inner))
            }
            "parenthesized_type" => {
                let child = self.tree.file(fid).children(ty).next();
                match child {
                    Some(c) => self.spell_type(fid, c),
                    None => UNKNOWN,
                }
            }
            // Slices, arrays, channels, funcs, anonymous structs/interfaces,
            // generic instantiations: known, deterministic-friendly shapes the
            // detectors do not distinguish.
            "slice_type" | "array_type" | "channel_type" | "function_type" | "struct_type"
            | "interface_type" | "generic_type" | "negated_type" | "union_type" => OTHER,
            _ => UNKNOWN,
        }
    }

    fn collect_funcs(&mut self) {
        let mut sigs = vec![FuncSig::default(); self.tree.funcs.len()];
        for i in 0..self.tree.funcs.len() {
            let (fid, decl) = {
                let f = self.tree.func(FuncId(i as u32));
                (f.file, f.decl)
            };
            let file = self.tree.file(fid);
            let mut sig = FuncSig::default();

            let recv_param = file.child_by_field(decl, "receiver").and_then(|recv| {
                file.children(recv)
                    .find(|&p| file.node(p).raw == "parameter_declaration")
            });
            if let Some(param) = recv_param {
                let name = file
                    .children_by_field(param, "name")
                    .next()
                    .map(|n| file.text_of(n).to_string());
                let ty = file.child_by_field(param, "type");
                let t = match ty {
                    Some(t) => self.spell_type(fid, t),
                    None => UNKNOWN,
                };
                sig.receiver = Some((name, t));
            }

            let file = self.tree.file(fid);
            if let Some(params) = file.child_by_field(decl, "parameters") {
                sig.params = self.expand_params(fid, params);
            }
            let file = self.tree.file(fid);
            if let Some(result) = file.child_by_field(decl, "result") {
                if file.node(result).raw == "parameter_list" {
                    sig.results = self
                        .expand_params(fid, result)
                        .into_iter()
                        .map(|(_, t)| t)
                        .collect();
                } else {
                    sig.results = vec![self.spell_type(fid, result)];
                }
            }
            sigs[i] = sig;
        }
        self.sigs = sigs;

        // Lookup tables. Non-test declarations win; among equals the first
        // (lowest FuncId, i.e. earliest path/offset) wins.
        for i in 0..self.tree.funcs.len() {
            let f = self.tree.func(FuncId(i as u32));
            if f.is_test_file {
                continue;
            }
            match &f.receiver {
                None => {
                    self.pkg_funcs
                        .entry((f.package, f.name.clone()))
                        .or_insert(FuncId(i as u32));
                }
                Some(recv) => {
                    self.methods
                        .entry((f.package, recv.clone(), f.name.clone()))
                        .or_insert(FuncId(i as u32));
                    self.method_sets
                        .entry((f.package, recv.clone()))
                        .or_default()
                        .push((f.name.clone(), self.sigs[i].arity()));
                }
            }
        }
        for set in self.method_sets.values_mut() {
            set.sort();
            set.dedup();
        }
    }

    fn expand_params(&mut self, fid: FileId, list: NodeId) -> Vec<(Option<String>, TypeId)> {
        let file = self.tree.file(fid);
        let mut decls = Vec::new();
        for p in file.children(list) {
            let raw = file.node(p).raw;
            if raw != "parameter_declaration" && raw != "variadic_parameter_declaration" {
                continue;
            }
            let names: Vec<String> = file
                .children_by_field(p, "name")
                .map(|n| file.text_of(n).to_string())
                .collect();
            let ty = file.child_by_field(p, "type");
            decls.push((names, ty, raw == "variadic_parameter_declaration"));
        }
        let mut out = Vec::new();
        for (names, ty, variadic) in decls {
            let base = ty.map(|t| self.spell_type(fid, t)).unwrap_or(UNKNOWN);
            // A variadic parameter is slice-shaped at the call boundary.
            let t = if variadic { OTHER } else { base };
            if names.is_empty() {
                out.push((None, t));
            } else {
                for n in names {
                    out.push((Some(n), t));
                }
            }
        }
        out
    }

    fn collect_pkg_values(&mut self) {
        for fi in 0..self.tree.files.len() {
            let fid = FileId(fi as u32);
            let (tops, pid) = {
                let file = self.tree.file(fid);
                (file.node(file.root).children.clone(), file.package)
            };
            for top in tops {
                let raw = self.tree.file(fid).node(top).raw;
                if raw != "var_declaration" && raw != "const_declaration" {
                    continue;
                }
                let specs: Vec<NodeId> = self.tree.file(fid).children(top).collect();
                for spec in specs {
                    let file = self.tree.file(fid);
                    let names: Vec<(String, NodeId)> = file
                        .children_by_field(spec, "name")
                        .map(|n| (file.text_of(n).to_string(), n))
                        .collect();
                    let ty = file.child_by_field(spec, "type");
                    let values: Vec<NodeId> = file
                        .child_by_field(spec, "value")
                        .map(|v| file.children(v).collect())
                        .unwrap_or_default();
                    let declared = ty.map(|t| self.spell_type(fid, t));
                    for (i, (name, _)) in names.iter().enumerate() {
                        let t = match declared {
                            Some(t) => t,
                            None => match values.get(i) {
                                Some(&v) => {
                                    let env = BTreeMap::new();
                                    self.infer_expr(fid, v, &env, 0)
                                }
                                None => UNKNOWN,
                            },
                        };
                        self.pkg_values.entry((pid, name.clone())).or_insert(t);
                        if raw == "const_declaration" {
                            if let Some(&v) = values.get(i) {
                                let file = self.tree.file(fid);
                                if file.node(v).kind == NodeKind::BasicLiteral
                                    && literal_text(file.text_of(v)).is_some()
                                {
                                    self.string_consts
                                        .entry((pid, name.clone()))
                                        .or_insert(NodeRef { file: fid, node: v });
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    /// Phase: per-function local environments. Definitions are collected in
    /// source order; a name keeps its type only when every definition agrees,
    /// otherwise it degrades to Unknown (flow-insensitive single-assignment
    /// inference).
    fn build_envs(&mut self) {
        self.envs = vec![BTreeMap::new(); self.tree.funcs.len()];
        for i in 0..self.tree.funcs.len() {
            let env = self.build_env_for(FuncId(i as u32));
            self.envs[i] = env;
        }
    }

    fn build_env_for(&mut self, f: FuncId) -> BTreeMap<String, TypeId> {
        let (fid, body) = {
            let fd = self.tree.func(f);
            (fd.file, fd.body)
        };
        let mut defs: Vec<(String, TypeId)> = Vec::new();
        let sig = self.sigs[f.0 as usize].clone();
        if let Some((Some(name), t)) = sig.receiver {
            defs.push((name, t));
        }
        for (name, t) in sig.params {
            if let Some(n) = name {
                defs.push((n, t));
            }
        }

        // Walk the body collecting definition sites in source order, typing
        // initializers against the environment accumulated so far.
        let mut env: BTreeMap<String, TypeId> = BTreeMap::new();
        let mut conflicted: HashSet<String> = HashSet::new();
        let push = |env: &mut BTreeMap<String, TypeId>,
                        conflicted: &mut HashSet<String>,
                        name: String,
                        t: TypeId| {
            match env.get(&name) {
                None => {
                    env.insert(name, t);
                }
                Some(&prev) if prev == t => {}
                Some(_) => {
                    env.insert(name.clone(), UNKNOWN);
                    conflicted.insert(name);
                }
            }
        };
        for (name, t) in defs {
            push(&mut env, &mut conflicted, name, t);
        }

        let Some(body) = body else { return env };
        let ids: Vec<NodeId> = self.tree.file(fid).descendants(body).collect();
        for id in ids {
            let raw = self.tree.file(fid).node(id).raw;
            match raw {
                "var_spec" | "const_spec" => {
                    let file = self.tree.file(fid);
                    let names: Vec<String> = file
                        .children_by_field(id, "name")
                        .map(|n| file.text_of(n).to_string())
                        .collect();
                    let ty = file.child_by_field(id, "type");
                    let values: Vec<NodeId> = file
                        .child_by_field(id, "value")
                        .map(|v| file.children(v).collect())
                        .unwrap_or_default();
                    let declared = ty.map(|t| self.spell_type(fid, t));
                    for (i, name) in names.into_iter().enumerate() {
                        let t = match declared {
                            Some(t) => t,
                            None => match values.get(i) {
                                Some(&v) => self.infer_expr(fid, v, &env, 0),
                                None => UNKNOWN,
                            },
                        };
                        push(&mut env, &mut conflicted, name, t);
                    }
                }
                "short_var_declaration" => {
                    let file = self.tree.file(fid);
                    let (Some(left), Some(right)) = (
                        file.child_by_field(id, "left"),
                        file.child_by_field(id, "right"),
                    ) else {
                        continue;
                    };
                    let names: Vec<Option<String>> = file
                        .children(left)
                        .map(|n| {
                            (file.node(n).raw == "identifier")
                                .then(|| file.text_of(n).to_string())
                        })
                        .collect();
                    let values: Vec<NodeId> = file.children(right).collect();
                    if names.len() == values.len() {
                        for (name, &v) in names.iter().zip(&values) {
                            let Some(name) = name.clone() else { continue };
                            let t = self.infer_expr(fid, v, &env, 0);
                            push(&mut env, &mut conflicted, name, t);
                        }
                    } else {
                        // Multi-value unpacking (call, map index): unknown.
                        for name in names.into_iter().flatten() {
                            push(&mut env, &mut conflicted, name, UNKNOWN);
                        }
                    }
                }
                "range_clause" => {
                    let file = self.tree.file(fid);
                    let left: Vec<Option<String>> = file
                        .child_by_field(id, "left")
                        .map(|l| {
                            file.children(l)
                                .map(|n| {
                                    (file.node(n).raw == "identifier")
                                        .then(|| file.text_of(n).to_string())
                                })
                                .collect()
                        })
                        .unwrap_or_default();
                    let operand_t = file
                        .child_by_field(id, "right")
                        .map(|r| self.infer_expr(fid, r, &env, 0))
                        .unwrap_or(UNKNOWN);
                    let (kt, vt) = match &self.types[self.deref(operand_t).0 as usize] {
                        TypeData::Map(k, v) => (*k, *v),
                        _ => (UNKNOWN, UNKNOWN),
                    };
                    for (i, name) in left.into_iter().enumerate() {
                        let Some(name) = name else { continue };
                        let t = if i == 0 { kt } else { vt };
                        push(&mut env, &mut conflicted, name, t);
                    }
                }
                "function_literal" => {
                    let file = self.tree.file(fid);
                    if let Some(params) = file.child_by_field(id, "parameters") {
                        for (name, t) in self.expand_params(fid, params) {
                            if let Some(n) = name {
                                push(&mut env, &mut conflicted, n, t);
                            }
                        }
                    }
                }
                _ => {}
            }
        }
        env
    }

    fn deref(&self, t: TypeId) -> TypeId {
        match self.types[t.0 as usize] {
            TypeData::Pointer(inner) => inner,
            _ => t,
        }
    }

    /// Float check used during binding, resolving named aliases like the
    /// final classification does.
    fn is_float_like(&self, t: TypeId) -> bool {
        let mut seen = HashSet::new();
        let mut cur = t;
        loop {
            match &self.types[cur.0 as usize] {
                TypeData::Float => return true,
                TypeData::Named {
                    pkg: Some(p), name, ..
                } => {
                    if !seen.insert(cur) {
                        return false;
                    }
                    match self.named.get(&(*p, name.clone())).map(|n| &n.kind) {
                        Some(NamedKind::Alias { underlying }) => cur = *underlying,
                        _ => return false,
                    }
                }
                _ => return false,
            }
        }
    }

    /// Type an expression against an environment without touching the memo
    /// table (used while environments are still being built).
    fn infer_expr(&mut self, fid: FileId, node: NodeId, env: &BTreeMap<String, TypeId>, depth: u32) -> TypeId {
        if depth > 64 {
            return UNKNOWN;
        }
        let file = self.tree.file(fid);
        let n = file.node(node);
        match n.raw {
            "identifier" => {
                let name = file.text_of(node).to_string();
                if let Some(&t) = env.get(&name) {
                    return t;
                }
                let pid = file.package;
                self.pkg_values
                    .get(&(pid, name))
                    .copied()
                    .unwrap_or(UNKNOWN)
            }
            "int_literal" | "rune_literal" => OTHER,
            "float_literal" | "imaginary_literal" => FLOAT,
            "interpreted_string_literal" | "raw_string_literal" => STR,
            "true" | "false" | "nil" | "iota" => OTHER,
            "parenthesized_expression" => {
                let child = self.tree.file(fid).children(node).next();
                match child {
                    Some(c) => self.infer_expr(fid, c, env, depth + 1),
                    None => UNKNOWN,
                }
            }
            "unary_expression" => {
                let op = n.op;
                let Some(operand) = file.child_by_field(node, "operand") else {
                    return UNKNOWN;
                };
                let t = self.infer_expr(fid, operand, env, depth + 1);
                match op {
                    Some("&") => self.intern(TypeData::Pointer(t)),
                    Some("*") => self.deref(t),
                    Some("!") => OTHER,
                    _ => t,
                }
            }
            "binary_expression" => {
                let op = n.op.unwrap_or("");
                let (l, r) = (
                    file.child_by_field(node, "left"),
                    file.child_by_field(node, "right"),
                );
                match op {
                    "==" | "!=" | "<" | "<=" | ">" | ">=" | "&&" | "||" => OTHER,
                    _ => {
                        let lt = l.map(|l| self.infer_expr(fid, l, env, depth + 1)).unwrap_or(UNKNOWN);
                        let rt = r.map(|r| self.infer_expr(fid, r, env, depth + 1)).unwrap_or(UNKNOWN);
                        if self.is_float_like(lt) || self.is_float_like(rt) {
                            FLOAT
                        } else if lt != UNKNOWN {
                            lt
                        } else {
                            rt
                        }
                    }
                }
            }
            "selector_expression" => self.infer_selector(fid, node, env, depth),
            "index_expression" => {
                let Some(operand) = file.child_by_field(node, "operand") else {
                    return UNKNOWN;
                };
                let t = self.infer_expr(fid, operand, env, depth + 1);
                match self.types[self.deref(t).0 as usize] {
                    TypeData::Map(_, v) => v,
                    _ => UNKNOWN,
                }
            }
            "slice_expression" => {
                let Some(operand) = file.child_by_field(node, "operand") else {
                    return UNKNOWN;
                };
                self.infer_expr(fid, operand, env, depth + 1)
            }
            "composite_literal" => file
                .child_by_field(node, "type")
                .map(|t| self.spell_type(fid, t))
                .unwrap_or(UNKNOWN),
            "type_assertion_expression" => file
                .child_by_field(node, "type")
                .map(|t| self.spell_type(fid, t))
                .unwrap_or(UNKNOWN),
            "call_expression" => self.infer_call(fid, node, env, depth),
            "func_literal" | "function_literal" => OTHER,
            _ => {
                // Type spellings in expression position (conversion callees
                // are handled by infer_call; this covers e.g. make's type arg).
                if file.node(node).kind == NodeKind::TypeSpelling {
                    self.spell_type(fid, node)
                } else {
                    UNKNOWN
                }
            }
        }
    }

    fn infer_selector(
        &mut self,
        fid: FileId,
        node: NodeId,
        env: &BTreeMap<String, TypeId>,
        depth: u32,
    ) -> TypeId {
        let file = self.tree.file(fid);
        let (Some(operand), Some(field)) = (
            file.child_by_field(node, "operand"),
            file.child_by_field(node, "field"),
        ) else {
            return UNKNOWN;
        };
        let field_name = file.text_of(field).to_string();

        // Package-qualified reference: `pkg.Name` where `pkg` is an import
        // alias not shadowed locally.
        if file.node(operand).raw == "identifier" {
            let qual = file.text_of(operand).to_string();
            let pid = file.package;
            let shadowed =
                env.contains_key(&qual) || self.pkg_values.contains_key(&(pid, qual.clone()));
            if !shadowed {
                if let Some(target) = self.imports[fid.0 as usize].get(&qual) {
                    return match target.pkg {
                        Some(tp) => self
                            .pkg_values
                            .get(&(tp, field_name))
                            .copied()
                            .unwrap_or(UNKNOWN),
                        None => UNKNOWN,
                    };
                }
            }
        }

        // Struct field access through a (possibly pointer-to) named type.
        let ot = self.infer_expr(fid, operand, env, depth + 1);
        let ot = self.deref(ot);
        if let TypeData::Named {
            pkg: Some(p), name, ..
        } = &self.types[ot.0 as usize]
        {
            let key = (*p, name.clone());
            if let Some(NamedKind::Struct { fields }) = self.named.get(&key).map(|n| &n.kind) {
                if let Some((_, t)) = fields.iter().find(|(n, _)| *n == field_name) {
                    return *t;
                }
            }
        }
        UNKNOWN
    }

    fn infer_call(
        &mut self,
        fid: FileId,
        node: NodeId,
        env: &BTreeMap<String, TypeId>,
        depth: u32,
    ) -> TypeId {
        let file = self.tree.file(fid);
        let kind = file.node(node).kind;
        let Some(callee) = file.child_by_field(node, "function") else {
            return UNKNOWN;
        };

        if kind == NodeKind::ConversionExpr {
            return self.conversion_target(fid, node).unwrap_or(UNKNOWN);
        }
        if kind == NodeKind::PanicCall {
            return OTHER;
        }

        let callee_raw = file.node(callee).raw;
        if callee_raw == "identifier" {
            let name = file.text_of(callee).to_string();
            let pid = file.package;
            if !env.contains_key(&name) {
                if let Some(&f) = self.pkg_funcs.get(&(pid, name.clone())) {
                    return self.single_result(f);
                }
                match name.as_str() {
                    "make" => {
                        let t = self.first_type_argument(fid, node);
                        return t.unwrap_or(UNKNOWN);
                    }
                    "new" => {
                        let t = self.first_type_argument(fid, node).unwrap_or(UNKNOWN);
                        return self.intern(TypeData::Pointer(t));
                    }
                    "len" | "cap" | "append" | "copy" | "delete" | "min" | "max" | "clear"
                    | "recover" | "print" | "println" | "complex" | "real" | "imag" => {
                        return match name.as_str() {
                            "complex" => FLOAT,
                            "real" | "imag" => FLOAT,
                            _ => OTHER,
                        };
                    }
                    _ => return UNKNOWN,
                }
            }
            return UNKNOWN;
        }

        if callee_raw == "selector_expression" {
            let (Some(operand), Some(field)) = (
                file.child_by_field(callee, "operand"),
                file.child_by_field(callee, "field"),
            ) else {
                return UNKNOWN;
            };
            let method = file.text_of(field).to_string();
            // Package function call.
            if file.node(operand).raw == "identifier" {
                let qual = file.text_of(operand).to_string();
                let pid = file.package;
                let shadowed =
                    env.contains_key(&qual) || self.pkg_values.contains_key(&(pid, qual.clone()));
                if !shadowed {
                    if let Some(target) = self.imports[fid.0 as usize].get(&qual) {
                        return match target.pkg {
                            Some(tp) => match self.pkg_funcs.get(&(tp, method)) {
                                Some(&f) => self.single_result(f),
                                None => UNKNOWN,
                            },
                            None => UNKNOWN,
                        };
                    }
                }
            }
            // Method call on a typed receiver.
            let ot = self.infer_expr(fid, operand, env, depth + 1);
            let ot = self.deref(ot);
            if let TypeData::Named {
                pkg: Some(p), name, ..
            } = self.types[ot.0 as usize].clone()
            {
                if let Some(&f) = self.methods.get(&(p, name, method)) {
                    return self.single_result(f);
                }
            }
        }
        UNKNOWN
    }

    /// Target type of a conversion call (`float64(x)`, `sdk.Dec(x)`, `T(x)`).
    fn conversion_target(&mut self, fid: FileId, call: NodeId) -> Option<TypeId> {
        let file = self.tree.file(fid);
        let callee = file.child_by_field(call, "function")?;
        match file.node(callee).raw {
            "identifier" => {
                let name = file.text_of(callee);
                Some(match name {
                    "float32" | "float64" | "complex64" | "complex128" => FLOAT,
                    "int" | "uint" | "uintptr" => PLATFORM,
                    "string" => STR,
                    "bool" | "byte" | "rune" | "int8" | "int16" | "int32" | "int64" | "uint8"
                    | "uint16" | "uint32" | "uint64" => OTHER,
                    _ => {
                        let key = (file.package, name.to_string());
                        if self.named.contains_key(&key) {
                            let path = self.tree.package(key.0).import_path.clone();
                            self.intern(TypeData::Named {
                                pkg: Some(key.0),
                                path,
                                name: key.1,
                            })
                        } else {
                            UNKNOWN
                        }
                    }
                })
            }
            "selector_expression" => {
                let operand = file.child_by_field(callee, "operand")?;
                let field = file.child_by_field(callee, "field")?;
                let alias = file.text_of(operand).to_string();
                let name = file.text_of(field).to_string();
                let target = self.imports[fid.0 as usize].get(&alias)?;
                let (path, pkg) = (target.path.clone(), target.pkg);
                Some(self.intern(TypeData::Named { pkg, path, name }))
            }
            _ => None,
        }
    }

    fn first_type_argument(&mut self, fid: FileId, call: NodeId) -> Option<TypeId> {
        let file = self.tree.file(fid);
        let args = file.child_by_field(call, "arguments")?;
        let first = file.children(args).next()?;
        if file.node(first).kind == NodeKind::TypeSpelling {
            Some(self.spell_type(fid, first))
        } else {
            None
        }
    }

    fn single_result(&mut self, f: FuncId) -> TypeId {
        let results = &self.sigs[f.0 as usize].results;
        if results.len() == 1 {
            results[0]
        } else {
            UNKNOWN
        }
    }

    /// Final phase: memoize a type for every node, typing function bodies
    /// against their merged environment and the rest against an empty one.
    fn type_everything(&mut self) {
        let empty = BTreeMap::new();
        for i in 0..self.tree.funcs.len() {
            let (fid, decl) = {
                let f = self.tree.func(FuncId(i as u32));
                (f.file, f.decl)
            };
            let env = std::mem::take(&mut self.envs[i]);
            let ids: Vec<NodeId> = self.tree.file(fid).descendants(decl).collect();
            for id in ids {
                if self.node_types[fid.0 as usize][id.0 as usize] == UNTYPED {
                    let t = self.infer_expr(fid, id, &env, 0);
                    self.node_types[fid.0 as usize][id.0 as usize] = t;
                }
            }
            self.envs[i] = env;
        }
        for fi in 0..self.tree.files.len() {
            let fid = FileId(fi as u32);
            for ni in 0..self.tree.file(fid).nodes.len() {
                if self.node_types[fi][ni] == UNTYPED {
                    let t = self.infer_expr(fid, NodeId(ni as u32), &empty, 0);
                    self.node_types[fi][ni] = t;
                }
            }
        }
    }

    fn finish(self) -> SourceModel {
        SourceModel {
            tree: self.tree,
            types: self.types,
            node_types: self.node_types,
            named: self.named,
            pkg_funcs: self.pkg_funcs,
            methods: self.methods,
            method_sets: self.method_sets,
            sigs: self.sigs,
            imports: self.imports,
            pkg_values: self.pkg_values,
            string_consts: self.string_consts,
            envs: self.envs,
        }
    }
}
