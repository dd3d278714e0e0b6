//! Cross-file semantic model shared by all detectors.
//!
//! Holds the class hierarchy (corpus classes merged with seeded library
//! edges), every corpus class declaration and an index of methods by
//! `(name, arity)`. Built once, then read-only.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{Block, ClassDecl, CompilationUnit, Expr, ExprKind, MethodDecl, StmtKind};
use crate::seed::ExternalHierarchySeed;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Origin {
    Corpus(String),
    ExternalSeed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HierarchyError {
    #[error("unknown class `{0}`")]
    UnknownClass(String),
    #[error("inheritance cycle: {}", .0.join(" -> "))]
    Cycle(Vec<String>),
}

/// Class names and their direct superclass edges.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ClassHierarchy {
    nodes: BTreeSet<String>,
    super_edges: BTreeMap<String, Vec<String>>,
    origin: BTreeMap<String, Origin>,
    unknown_external: BTreeSet<String>,
}

impl ClassHierarchy {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a node. An existing node keeps its edges and origin.
    pub fn add_class(&mut self, name: &str, supers: &[String], origin: Origin) -> bool {
        if self.nodes.contains(name) {
            return false;
        }
        self.nodes.insert(name.to_string());
        self.unknown_external.remove(name);
        self.super_edges.insert(name.to_string(), supers.to_vec());
        self.origin.insert(name.to_string(), origin);
        true
    }

    /// Records superclass names that are referenced but never declared.
    fn finalize(&mut self) {
        let referenced: BTreeSet<String> = self.super_edges.values().flatten().cloned().collect();
        self.unknown_external = referenced.difference(&self.nodes).cloned().collect();
    }

    pub fn contains(&self, name: &str) -> bool {
        self.nodes.contains(name)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &str> {
        self.nodes.iter().map(String::as_str)
    }

    pub fn supers(&self, name: &str) -> &[String] {
        self.super_edges.get(name).map_or(&[], Vec::as_slice)
    }

    pub fn first_super(&self, name: &str) -> Option<&str> {
        self.supers(name).first().map(String::as_str)
    }

    pub fn origin(&self, name: &str) -> Option<&Origin> {
        self.origin.get(name)
    }

    pub fn is_unknown_external(&self, name: &str) -> bool {
        self.unknown_external.contains(name)
    }

    pub fn unknown_external(&self) -> impl Iterator<Item = &str> {
        self.unknown_external.iter().map(String::as_str)
    }

    /// Ancestors along the first-superclass chain, nearest first. An undeclared
    /// superclass ends the chain but is included in it.
    pub fn superclass_chain(&self, name: &str) -> Result<Vec<String>, HierarchyError> {
        if !self.nodes.contains(name) && !self.unknown_external.contains(name) {
            return Err(HierarchyError::UnknownClass(name.to_string()));
        }
        let mut chain: Vec<String> = Vec::new();
        let mut current = name;
        while let Some(parent) = self.first_super(current) {
            if parent == name || chain.iter().any(|c| c == parent) {
                let start = chain.iter().position(|c| c == parent);
                let mut cycle: Vec<String> = match start {
                    Some(i) => chain[i..].to_vec(),
                    None => std::iter::once(name.to_string()).chain(chain.iter().cloned()).collect(),
                };
                cycle.push(parent.to_string());
                return Err(HierarchyError::Cycle(cycle));
            }
            chain.push(parent.to_string());
            current = parent;
        }
        Ok(chain)
    }

    /// Number of extends-edges from `name` to the root of its first-superclass chain.
    pub fn inheritance_depth(&self, name: &str) -> Result<usize, HierarchyError> {
        self.superclass_chain(name).map(|c| c.len())
    }

    /// Strict descendant test along first-superclass edges.
    pub fn is_descendant(&self, a: &str, b: &str) -> bool {
        if a == b {
            return false;
        }
        let mut seen = BTreeSet::new();
        let mut current = a;
        while let Some(parent) = self.first_super(current) {
            if parent == b {
                return true;
            }
            if !seen.insert(parent) {
                return false;
            }
            current = parent;
        }
        false
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelDiagnostic {
    pub file_path: String,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassEntry {
    pub file_path: String,
    pub decl: ClassDecl,
}

/// A resolved method: the declaring class entry and the method itself.
#[derive(Debug, Clone, Copy)]
pub struct MethodRef<'m> {
    pub class: &'m ClassEntry,
    pub method: &'m MethodDecl,
}

#[derive(Debug, Clone)]
pub struct ProgramModel {
    pub hierarchy: ClassHierarchy,
    /// Corpus classes ordered by `(file_path, line)`.
    classes: Vec<ClassEntry>,
    by_name: HashMap<String, usize>,
    /// `(name, arity)` -> `(class index, method index)`, ordered by file and line.
    method_index: BTreeMap<(String, usize), Vec<(usize, usize)>>,
    pub seed: ExternalHierarchySeed,
    pub diagnostics: Vec<ModelDiagnostic>,
}

impl ProgramModel {
    pub fn classes(&self) -> &[ClassEntry] {
        &self.classes
    }

    pub fn class(&self, name: &str) -> Option<&ClassEntry> {
        self.by_name.get(name).map(|&i| &self.classes[i])
    }

    /// Every non-constructor corpus method named `name` taking `arity` arguments.
    pub fn resolve_callee(&self, name: &str, arity: usize) -> Vec<MethodRef<'_>> {
        self.method_index
            .get(&(name.to_string(), arity))
            .map(|hits| {
                hits.iter()
                    .map(|&(c, m)| {
                        let class = &self.classes[c];
                        MethodRef { class, method: &class.decl.methods[m] }
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    pub fn inheritance_depth(&self, class_name: &str) -> Result<usize, HierarchyError> {
        self.hierarchy.inheritance_depth(class_name)
    }

    pub fn is_descendant(&self, a: &str, b: &str) -> bool {
        self.hierarchy.is_descendant(a, b)
    }
}

/// Merges parsed units with the seed into one model.
///
/// Units are processed in file-path order, so the result does not depend on
/// the order of `units`. A class name declared twice keeps the first
/// declaration and records a diagnostic for the other.
pub fn build_model(units: &[CompilationUnit], seed: &ExternalHierarchySeed) -> ProgramModel {
    let mut ordered: Vec<&CompilationUnit> = units.iter().collect();
    ordered.sort_by(|a, b| a.file_path.cmp(&b.file_path));

    let mut hierarchy = ClassHierarchy::new();
    let mut classes = Vec::new();
    let mut by_name = HashMap::new();
    let mut diagnostics = Vec::new();

    for unit in ordered {
        let mut decls: Vec<&ClassDecl> = unit.classes.iter().collect();
        decls.sort_by_key(|c| c.line);
        for decl in decls {
            if by_name.contains_key(&decl.name) {
                let first: &ClassEntry = &classes[by_name[&decl.name]];
                diagnostics.push(ModelDiagnostic {
                    file_path: unit.file_path.clone(),
                    line: decl.line,
                    message: format!(
                        "duplicate class `{}` ignored; first declared in {}:{}",
                        decl.name, first.file_path, first.decl.line
                    ),
                });
                continue;
            }
            hierarchy.add_class(&decl.name, &decl.extends_list, Origin::Corpus(unit.file_path.clone()));
            by_name.insert(decl.name.clone(), classes.len());
            classes.push(ClassEntry { file_path: unit.file_path.clone(), decl: decl.clone() });
        }
    }

    // Corpus declarations win over seeded edges for the same class.
    for (sub, sup) in &seed.extends {
        hierarchy.add_class(sub, std::slice::from_ref(sup), Origin::ExternalSeed);
    }
    // Seeded superclasses that are not themselves subclasses anywhere are roots.
    for (_, sup) in &seed.extends {
        if !hierarchy.contains(sup) {
            hierarchy.add_class(sup, &[], Origin::ExternalSeed);
        }
    }
    hierarchy.finalize();

    let mut reported_cycles = BTreeSet::new();
    for entry in &classes {
        if let Err(HierarchyError::Cycle(cycle)) = hierarchy.superclass_chain(&entry.decl.name) {
            let mut members: Vec<String> = cycle.clone();
            members.sort();
            members.dedup();
            if reported_cycles.insert(members) {
                diagnostics.push(ModelDiagnostic {
                    file_path: entry.file_path.clone(),
                    line: entry.decl.line,
                    message: HierarchyError::Cycle(cycle).to_string(),
                });
            }
        }
    }

    let mut method_index: BTreeMap<(String, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for (ci, entry) in classes.iter().enumerate() {
        for (mi, method) in entry.decl.methods.iter().enumerate() {
            if method.is_constructor {
                continue;
            }
            method_index.entry((method.name.clone(), method.arity())).or_default().push((ci, mi));
        }
    }
    for hits in method_index.values_mut() {
        hits.sort_by(|&(ca, ma), &(cb, mb)| {
            let a = (&classes[ca].file_path, classes[ca].decl.methods[ma].line);
            let b = (&classes[cb].file_path, classes[cb].decl.methods[mb].line);
            a.cmp(&b).then((ca, ma).cmp(&(cb, mb)))
        });
    }

    ProgramModel { hierarchy, classes, by_name, method_index, seed: seed.clone(), diagnostics }
}

// ---- scopes and static types ---------------------------------------------

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum StaticType {
    Known(String),
    Unknown,
}

impl StaticType {
    pub fn name(&self) -> Option<&str> {
        match self {
            StaticType::Known(t) => Some(t),
            StaticType::Unknown => None,
        }
    }

    pub fn is(&self, ty: &str) -> bool {
        self.name() == Some(ty)
    }
}

impl fmt::Display for StaticType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StaticType::Known(t) => f.write_str(t),
            StaticType::Unknown => f.write_str("<unknown>"),
        }
    }
}

/// Declared variable types visible at a program point. Inner frames shadow outer ones.
#[derive(Debug, Clone, Default)]
pub struct Scope<'a> {
    frames: Vec<Vec<(&'a str, &'a str)>>,
}

impl<'a> Scope<'a> {
    pub fn new() -> Self {
        Scope { frames: vec![Vec::new()] }
    }

    /// Scope holding the fields of `class`.
    pub fn for_class(class: &'a ClassDecl) -> Self {
        let mut scope = Scope::new();
        for f in &class.fields {
            scope.declare(&f.name, &f.ty);
        }
        scope
    }

    pub fn push(&mut self) {
        self.frames.push(Vec::new());
    }

    pub fn pop(&mut self) {
        self.frames.pop();
    }

    pub fn declare(&mut self, name: &'a str, ty: &'a str) {
        if self.frames.is_empty() {
            self.frames.push(Vec::new());
        }
        self.frames.last_mut().expect("non-empty").push((name, ty));
    }

    pub fn lookup(&self, name: &str) -> StaticType {
        self.frames
            .iter()
            .rev()
            .flat_map(|frame| frame.iter().rev())
            .find(|(n, _)| *n == name)
            .map_or(StaticType::Unknown, |(_, t)| StaticType::Known((*t).to_string()))
    }
}

/// Declared type of an expression where it is locally evident.
pub fn static_type_of(expr: &Expr, scope: &Scope<'_>) -> StaticType {
    match &expr.kind {
        ExprKind::StringLit(_) => StaticType::Known("String".to_string()),
        ExprKind::Name(n) => scope.lookup(n),
        ExprKind::New { ty, .. } => StaticType::Known(simple_type_name(ty).to_string()),
        ExprKind::Paren(inner) => static_type_of(inner, scope),
        _ => StaticType::Unknown,
    }
}

/// Last segment of a possibly qualified type name.
pub fn simple_type_name(ty: &str) -> &str {
    ty.rsplit('.').next().unwrap_or(ty)
}

// ---- scoped traversal ----------------------------------------------------

/// Callbacks for [`walk_method`]. Each hook sees the scope in effect at the node.
pub trait ScopedVisitor<'a> {
    fn visit_expr(&mut self, _expr: &'a Expr, _scope: &Scope<'a>) {}
    fn visit_stmt(&mut self, _stmt: &'a crate::ast::Stmt, _scope: &Scope<'a>) {}
}

/// Walks a method body in source order with class fields, parameters and
/// locals in scope.
pub fn walk_method<'a, V: ScopedVisitor<'a>>(class: &'a ClassDecl, method: &'a MethodDecl, v: &mut V) {
    let Some(body) = &method.body else { return };
    let mut scope = Scope::for_class(class);
    scope.push();
    for p in &method.params {
        scope.declare(&p.name, &p.ty);
    }
    walk_block(body, &mut scope, v);
}

/// Walks the field initializers of `class` with its fields in scope.
pub fn walk_field_initializers<'a, V: ScopedVisitor<'a>>(class: &'a ClassDecl, v: &mut V) {
    let scope = Scope::for_class(class);
    for f in &class.fields {
        if let Some(init) = &f.init {
            walk_expr(init, &scope, v);
        }
    }
}

fn walk_expr<'a, V: ScopedVisitor<'a>>(expr: &'a Expr, scope: &Scope<'a>, v: &mut V) {
    expr.for_each(&mut |e| v.visit_expr(e, scope));
}

fn walk_block<'a, V: ScopedVisitor<'a>>(block: &'a Block, scope: &mut Scope<'a>, v: &mut V) {
    scope.push();
    for stmt in &block.stmts {
        walk_stmt(stmt, scope, v);
    }
    scope.pop();
}

fn walk_stmt<'a, V: ScopedVisitor<'a>>(stmt: &'a crate::ast::Stmt, scope: &mut Scope<'a>, v: &mut V) {
    v.visit_stmt(stmt, scope);
    match &stmt.kind {
        StmtKind::Block(b) => walk_block(b, scope, v),
        StmtKind::LocalVar { ty, name, init } => {
            if let Some(init) = init {
                walk_expr(init, scope, v);
            }
            scope.declare(name, ty);
        }
        StmtKind::Expr(e) | StmtKind::Throw(e) | StmtKind::Return(Some(e)) => walk_expr(e, scope, v),
        StmtKind::If { cond, then_branch, else_branch } => {
            walk_expr(cond, scope, v);
            scope.push();
            walk_stmt(then_branch, scope, v);
            scope.pop();
            if let Some(e) = else_branch {
                scope.push();
                walk_stmt(e, scope, v);
                scope.pop();
            }
        }
        StmtKind::While { cond, body } => {
            walk_expr(cond, scope, v);
            walk_block(body, scope, v);
        }
        StmtKind::DoWhile { body, cond } => {
            walk_block(body, scope, v);
            walk_expr(cond, scope, v);
        }
        StmtKind::For { init, cond, update, body } => {
            scope.push();
            for s in init {
                walk_stmt(s, scope, v);
            }
            if let Some(c) = cond {
                walk_expr(c, scope, v);
            }
            walk_block(body, scope, v);
            for u in update {
                walk_expr(u, scope, v);
            }
            scope.pop();
        }
        StmtKind::Try { body, catches, finally } => {
            walk_block(body, scope, v);
            for c in catches {
                scope.push();
                let ty = c.types.first().map_or("Exception", String::as_str);
                scope.declare(&c.name, ty);
                walk_block(&c.body, scope, v);
                scope.pop();
            }
            if let Some(f) = finally {
                walk_block(f, scope, v);
            }
        }
        StmtKind::Return(None) | StmtKind::Break | StmtKind::Continue | StmtKind::Empty => {}
    }
}
