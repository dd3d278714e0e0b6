//! Generators and independent oracles shared by the property tests and the
//! acceptance runner. Oracles here never call into the detectors they judge.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use faultlint_core::aggregate::{aggregate, ClassRecord};
use faultlint_core::cluster::{cluster, Cluster};
use faultlint_core::detectors::{run_all, run_detector, Finding, FindingDetail};
use faultlint_core::store::{Diagnostic, DiagnosticKind};
use faultlint_core::{
    build_model, parse_source, AnalysisStore, ErrorCode, ExternalHierarchySeed, ProgramModel, RuleSet,
};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use regex::Regex;

pub fn fixtures_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

pub fn model_of(sources: &[(String, String)]) -> ProgramModel {
    let units: Vec<_> = sources.iter().map(|(p, s)| parse_source(s, p)).collect();
    build_model(&units, &ExternalHierarchySeed::default())
}

// ---------------------------------------------------------------------------
// Inheritance forests (spaghetti threshold and depth)

/// Parent of a generated class: none, an undeclared library class, or an
/// earlier generated class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parent {
    Root,
    External,
    Class(usize),
}

#[derive(Debug, Clone)]
pub struct Forest {
    pub parents: Vec<Parent>,
    /// File index per class.
    pub files: Vec<usize>,
}

pub fn forest(max_classes: usize) -> impl Strategy<Value = Forest> {
    (1..=max_classes)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<Parent>> = (0..n)
                .map(|i| {
                    if i == 0 {
                        prop_oneof![Just(Parent::Root), Just(Parent::External)].boxed()
                    } else {
                        // Mostly extend a recent class so that deep chains are common.
                        let lo = i.saturating_sub(3);
                        prop_oneof![
                            1 => Just(Parent::Root),
                            1 => Just(Parent::External),
                            8 => (lo..i).prop_map(Parent::Class),
                        ]
                        .boxed()
                    }
                })
                .collect();
            (parents, prop::collection::vec(0..4usize, n))
        })
        .prop_map(|(parents, files)| Forest { parents, files })
}

impl Forest {
    pub fn class_name(i: usize) -> String {
        format!("K{i}")
    }

    pub fn sources(&self) -> Vec<(String, String)> {
        let mut files: BTreeMap<usize, String> = BTreeMap::new();
        for (i, p) in self.parents.iter().enumerate() {
            let header = match p {
                Parent::Root => format!("class {}", Self::class_name(i)),
                Parent::External => format!("class {} extends Lib{i}", Self::class_name(i)),
                Parent::Class(j) => format!("class {} extends {}", Self::class_name(i), Self::class_name(*j)),
            };
            let text = files.entry(self.files[i]).or_default();
            text.push_str(&format!("{header}\n{{\n    int v{i};\n}}\n"));
        }
        files.into_iter().map(|(k, text)| (format!("F{k}.java"), text)).collect()
    }

    /// Brute-force edge count: walk parent links, counting an external
    /// superclass as one final edge.
    pub fn depth_oracle(&self, i: usize) -> usize {
        let mut depth = 0;
        let mut current = i;
        loop {
            match self.parents[current] {
                Parent::Root => return depth,
                Parent::External => return depth + 1,
                Parent::Class(j) => {
                    depth += 1;
                    current = j;
                }
            }
        }
    }

    /// Ancestor relation by repeated squaring of the reachability matrix.
    pub fn closure_oracle(&self) -> Vec<Vec<bool>> {
        let n = self.parents.len();
        let mut m = vec![vec![false; n]; n];
        for (i, p) in self.parents.iter().enumerate() {
            if let Parent::Class(j) = p {
                m[i][*j] = true;
            }
        }
        let mut steps = 1;
        while steps < n {
            let mut next = m.clone();
            for i in 0..n {
                for k in 0..n {
                    if m[i][k] {
                        for j in 0..n {
                            if m[k][j] {
                                next[i][j] = true;
                            }
                        }
                    }
                }
            }
            m = next;
            steps *= 2;
        }
        m
    }
}

pub fn check_spaghetti(forest: &Forest) -> Result<(), TestCaseError> {
    let model = model_of(&forest.sources());
    let findings = run_detector(&model, ErrorCode::Spaghetti);
    let flagged: BTreeSet<String> = findings.iter().map(|f| f.class_name.clone()).collect();
    let expected: BTreeSet<String> =
        (0..forest.parents.len()).filter(|&i| forest.depth_oracle(i) >= 6).map(Forest::class_name).collect();
    prop_assert_eq!(&flagged, &expected);
    prop_assert_eq!(findings.len(), expected.len());
    for i in 0..forest.parents.len() {
        prop_assert_eq!(model.inheritance_depth(&Forest::class_name(i)).ok(), Some(forest.depth_oracle(i)));
    }
    for f in &findings {
        if let FindingDetail::DeepInheritance { depth, chain } = &f.detail {
            prop_assert_eq!(*depth, chain.len());
            prop_assert!(*depth >= 6);
        } else {
            prop_assert!(false, "unexpected detail {:?}", f.detail);
        }
    }
    Ok(())
}

pub fn check_descendant_closure(forest: &Forest) -> Result<(), TestCaseError> {
    let model = model_of(&forest.sources());
    let closure = forest.closure_oracle();
    let n = forest.parents.len();
    for i in 0..n {
        for j in 0..n {
            prop_assert_eq!(
                model.is_descendant(&Forest::class_name(i), &Forest::class_name(j)),
                closure[i][j],
                "K{} below K{}",
                i,
                j
            );
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// String comparison truth table

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OperandType {
    String,
    Unknown,
    Int,
}

pub const OPERAND_TYPES: [OperandType; 3] = [OperandType::String, OperandType::Unknown, OperandType::Int];
pub const COMPARISON_OPS: [&str; 3] = ["==", "!=", "<"];

/// Every expression form used for an operand of the given type.
fn operand_forms(ty: OperandType, side: &str) -> Vec<String> {
    match ty {
        OperandType::String => vec![format!("s{side}"), format!("\"lit{side}\""), format!("fs{side}")],
        OperandType::Unknown => vec![format!("u{side}"), format!("obj.f{side}"), format!("call{side}()")],
        OperandType::Int => vec![format!("i{side}"), "42".to_string()],
    }
}

fn truth_table_source(lhs: &str, op: &str, rhs: &str) -> String {
    format!(
        "class T\n{{\n    String fsL = \"a\";\n    String fsR = \"b\";\n    void m(int iL, int iR)\n    {{\n        String sL = \"x\";\n        String sR = \"y\";\n        if ({lhs} {op} {rhs})\n        {{\n            iL++;\n        }}\n    }}\n}}\n"
    )
}

/// Exhaustive check over {String, Unknown, int}² × {==, !=, <}, each type in
/// all of its expression forms. Returns the number of programs checked.
pub fn check_string_comparison_table() -> Result<usize, String> {
    let mut checked = 0;
    for lt in OPERAND_TYPES {
        for rt in OPERAND_TYPES {
            for op in COMPARISON_OPS {
                let expected = (op == "==" || op == "!=") && (lt == OperandType::String || rt == OperandType::String);
                for lhs in operand_forms(lt, "L") {
                    for rhs in operand_forms(rt, "R") {
                        let src = truth_table_source(&lhs, op, &rhs);
                        let model = model_of(&[("T.java".to_string(), src)]);
                        let findings = run_detector(&model, ErrorCode::LvalueRequired);
                        let want = usize::from(expected);
                        if findings.len() != want || findings.iter().any(|f| f.line != 9) {
                            return Err(format!(
                                "`{lhs} {op} {rhs}` ({lt:?}, {rt:?}): expected {want} finding(s) at line 9, got {findings:?}"
                            ));
                        }
                        checked += 1;
                    }
                }
            }
        }
    }
    Ok(checked)
}

// ---------------------------------------------------------------------------
// Resource open/close sequences

pub const GENERATED_TYPES: [(&str, bool); 6] = [
    ("FileOutputStream", true),
    ("FileWriter", true),
    ("BufferedReader", true),
    ("DataInputStream", true),
    ("StringBuilder", false),
    ("ArrayList", false),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosePlacement {
    Never,
    /// `v.close(1)`: not a close.
    WithArgument,
    Plain,
    InIf,
    InFinally,
    InLoop,
    BeforeUse,
}

#[derive(Debug, Clone)]
pub struct Resource {
    pub ty: usize,
    pub close: ClosePlacement,
    pub writes: usize,
}

#[derive(Debug, Clone)]
pub struct ResourceCase {
    /// Resources per method.
    pub methods: Vec<Vec<Resource>>,
    /// Close a same-named variable from the previous method instead of this one.
    pub cross_method_close: bool,
}

fn placement() -> impl Strategy<Value = ClosePlacement> {
    prop_oneof![
        Just(ClosePlacement::Never),
        Just(ClosePlacement::WithArgument),
        Just(ClosePlacement::Plain),
        Just(ClosePlacement::InIf),
        Just(ClosePlacement::InFinally),
        Just(ClosePlacement::InLoop),
        Just(ClosePlacement::BeforeUse),
    ]
}

pub fn resource_case() -> impl Strategy<Value = ResourceCase> {
    let resource = (0..GENERATED_TYPES.len(), placement(), 0..3usize).prop_map(|(ty, close, writes)| Resource {
        ty,
        close,
        writes,
    });
    (prop::collection::vec(prop::collection::vec(resource, 0..5), 1..4), any::<bool>())
        .prop_map(|(methods, cross_method_close)| ResourceCase { methods, cross_method_close })
}

impl ResourceCase {
    pub fn source(&self) -> String {
        let mut out = String::from("import java.io.*;\n\nclass R\n{\n");
        for (m, resources) in self.methods.iter().enumerate() {
            out.push_str(&format!("    void m{m}(int n)\n    {{\n"));
            let mut tail = Vec::new();
            for (k, r) in resources.iter().enumerate() {
                let ty = GENERATED_TYPES[r.ty].0;
                let var = format!("v{k}");
                if r.close == ClosePlacement::BeforeUse {
                    out.push_str(&format!("        {var}.close();\n"));
                }
                out.push_str(&format!("        {ty} {var} = new {ty}(\"f{k}\");\n"));
                for w in 0..r.writes {
                    out.push_str(&format!("        {var}.write({w});\n"));
                }
                match r.close {
                    ClosePlacement::Never | ClosePlacement::BeforeUse => {}
                    ClosePlacement::WithArgument => out.push_str(&format!("        {var}.close(1);\n")),
                    ClosePlacement::Plain => tail.push(format!("        {var}.close();\n")),
                    ClosePlacement::InIf => {
                        tail.push(format!("        if (n > {k})\n        {{\n            {var}.close();\n        }}\n"))
                    }
                    ClosePlacement::InFinally => tail.push(format!(
                        "        try\n        {{\n            n++;\n        }}\n        finally\n        {{\n            {var}.close();\n        }}\n"
                    )),
                    ClosePlacement::InLoop => {
                        tail.push(format!("        while (n > 0)\n        {{\n            {var}.close();\n            n--;\n        }}\n"))
                    }
                }
            }
            if self.cross_method_close && m > 0 && self.methods[m - 1].len() > resources.len() {
                // A variable named like one of the previous method's, closed here only.
                tail.push(format!(
                    "        Object v{} = null;\n        v{}.close();\n",
                    resources.len(),
                    resources.len()
                ));
            }
            for t in tail {
                out.push_str(&t);
            }
            out.push_str("    }\n");
        }
        out.push_str("}\n");
        out
    }
}

/// Text-scan oracle: per method body, every `T v = new T(` of a resource type
/// whose variable never appears as `v.close()`. Returns `(variable, line)`.
pub fn unclosed_oracle(source: &str) -> BTreeSet<(String, usize)> {
    let method_start = Regex::new(r"^    void \w+\(").unwrap();
    let decl = Regex::new(r"(\w+)\s+(\w+)\s*=\s*new\s+(\w+)\s*\(").unwrap();
    let resources: BTreeSet<&str> = GENERATED_TYPES.iter().filter(|(_, r)| *r).map(|(t, _)| *t).collect();

    let lines: Vec<&str> = source.lines().collect();
    let starts: Vec<usize> = (0..lines.len()).filter(|&i| method_start.is_match(lines[i])).collect();
    let mut out = BTreeSet::new();
    for (n, &start) in starts.iter().enumerate() {
        let end = starts.get(n + 1).copied().unwrap_or(lines.len());
        let body = lines[start..end].join("\n");
        for (offset, line) in lines[start..end].iter().enumerate() {
            for cap in decl.captures_iter(line) {
                if !resources.contains(&cap[3]) {
                    continue;
                }
                let var = &cap[2];
                let closed = Regex::new(&format!(r"\b{var}\s*\.\s*close\s*\(\s*\)")).unwrap();
                if !closed.is_match(&body) {
                    out.insert((var.to_string(), start + offset + 1));
                }
            }
        }
    }
    out
}

pub fn check_file_usage(case: &ResourceCase) -> Result<(), TestCaseError> {
    let source = case.source();
    let model = model_of(&[("R.java".to_string(), source.clone())]);
    prop_assert!(model.diagnostics.is_empty());
    let findings = run_detector(&model, ErrorCode::IllicitFileUsage);
    let got: BTreeSet<(String, usize)> = findings
        .iter()
        .map(|f| match &f.detail {
            FindingDetail::UnclosedResource { variable, .. } => (variable.clone(), f.line),
            other => (format!("{other:?}"), f.line),
        })
        .collect();
    prop_assert_eq!(got.len(), findings.len());
    prop_assert_eq!(got, unclosed_oracle(&source), "source:\n{}", source);
    Ok(())
}

// ---------------------------------------------------------------------------
// Inconsistent type usage on Fig-3-shaped corpora

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Ablation {
    None,
    /// Argument has the parameter's own type.
    NotDescendant,
    /// Callee only reads through its parameter.
    NoMutation,
    /// The caller uses the variable before the call only.
    NoLaterUse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    Method(&'static str),
    FieldAssign,
}

#[derive(Debug, Clone)]
pub struct ItuCase {
    /// 0 means the seeded Stack -> Vector pair, otherwise the length of a
    /// generated `D{k} extends ... extends Base` chain.
    pub chain: usize,
    pub mutation: Mutation,
    pub pure_call: &'static str,
    pub later_use: &'static str,
    pub pushes: usize,
    pub callee_in_other_class: bool,
    pub ablation: Ablation,
}

pub const MUTATORS: [&str; 5] = ["removeElementAt", "clear", "add", "setSize", "trimToSize"];
pub const PURE_CALLS: [&str; 4] = ["size", "isEmpty", "getFirst", "peek"];
pub const LATER_USES: [&str; 3] = ["pop", "peek", "size"];

pub fn itu_case(ablation: impl Strategy<Value = Ablation>) -> impl Strategy<Value = ItuCase> {
    let mutation = prop_oneof![
        4 => prop::sample::select(MUTATORS.to_vec()).prop_map(Mutation::Method),
        1 => Just(Mutation::FieldAssign),
    ];
    (
        0..4usize,
        mutation,
        prop::sample::select(PURE_CALLS.to_vec()),
        prop::sample::select(LATER_USES.to_vec()),
        0..4usize,
        any::<bool>(),
        ablation,
    )
        .prop_map(|(chain, mutation, pure_call, later_use, pushes, callee_in_other_class, ablation)| {
            // Field assignment needs a corpus-declared base class.
            let chain = if mutation == Mutation::FieldAssign && chain == 0 { 1 } else { chain };
            ItuCase { chain, mutation, pure_call, later_use, pushes, callee_in_other_class, ablation }
        })
}

pub fn any_ablation() -> impl Strategy<Value = Ablation> {
    prop_oneof![
        Just(Ablation::None),
        Just(Ablation::NotDescendant),
        Just(Ablation::NoMutation),
        Just(Ablation::NoLaterUse)
    ]
}

impl ItuCase {
    fn types(&self) -> (String, String) {
        if self.chain == 0 {
            ("Stack".to_string(), "Vector".to_string())
        } else {
            (format!("D{}", self.chain), "Base".to_string())
        }
    }

    /// Sources plus the expected call line in `Caller.java`.
    pub fn sources(&self) -> (Vec<(String, String)>, usize) {
        let (desc, base) = self.types();
        let arg_ty = if self.ablation == Ablation::NotDescendant { base.clone() } else { desc.clone() };
        let mut caller = String::from("class Caller\n{\n");
        caller.push_str(&format!("    public void f({arg_ty} s)\n    {{\n        String s1 = \"s1\";\n"));
        for _ in 0..self.pushes {
            caller.push_str("        s.push(s1);\n");
        }
        if self.ablation == Ablation::NoLaterUse {
            caller.push_str(&format!("        s.{}();\n", self.later_use));
        }
        let call_line = caller.lines().count() + 1;
        caller.push_str("        g(s);\n");
        if self.ablation != Ablation::NoLaterUse {
            caller.push_str("        int after = 0;\n");
            caller.push_str(&format!("        s.{}();\n", self.later_use));
        }
        caller.push_str("    }\n");

        let mut callee = format!("    public void g({base} v)\n    {{\n");
        if self.ablation == Ablation::NoMutation {
            callee.push_str(&format!("        v.{}();\n", self.pure_call));
        } else {
            match self.mutation {
                Mutation::Method(name) => callee.push_str(&format!("        v.{name}(v.size() - 1);\n")),
                Mutation::FieldAssign => callee.push_str("        v.count = 0;\n"),
            }
        }
        callee.push_str("    }\n");

        let mut files = Vec::new();
        if self.callee_in_other_class {
            caller.push_str("}\n");
            files.push(("Helper.java".to_string(), format!("class Helper\n{{\n{callee}}}\n")));
        } else {
            caller.push_str(&callee);
            caller.push_str("}\n");
        }
        files.push(("Caller.java".to_string(), caller));
        if self.chain > 0 {
            let mut hierarchy = String::from("class Base\n{\n    int count;\n}\n");
            for k in 1..=self.chain {
                let parent = if k == 1 { "Base".to_string() } else { format!("D{}", k - 1) };
                hierarchy.push_str(&format!("class D{k} extends {parent}\n{{\n}}\n"));
            }
            files.push(("Hierarchy.java".to_string(), hierarchy));
        }
        (files, call_line)
    }
}

pub fn check_itu(case: &ItuCase) -> Result<(), TestCaseError> {
    let (sources, call_line) = case.sources();
    let model = model_of(&sources);
    prop_assert!(model.diagnostics.is_empty(), "{:?}", model.diagnostics);
    let findings = run_detector(&model, ErrorCode::InconsistentTypeUsage);
    if case.ablation == Ablation::None {
        prop_assert_eq!(findings.len(), 1, "{:?}", sources);
        prop_assert_eq!(&findings[0].class_name, "Caller");
        prop_assert_eq!(findings[0].line, call_line);
    } else {
        prop_assert!(findings.is_empty(), "{:?} produced {:?}", case.ablation, findings);
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Multiple-extends headers

pub fn check_extends_list(n: usize) -> Result<(), TestCaseError> {
    let supers: Vec<String> = (0..n).map(|i| format!("P{i}")).collect();
    let src = format!("class C extends {}\n{{\n    void m() {{ }}\n}}\n", supers.join(", "));
    let unit = parse_source(&src, "C.java");
    prop_assert!(unit.diagnostics.is_empty());
    prop_assert_eq!(unit.classes.len(), 1);
    prop_assert_eq!(&unit.classes[0].extends_list, &supers);
    prop_assert_eq!(unit.classes[0].methods.len(), 1);
    let model = build_model(&[unit], &ExternalHierarchySeed::default());
    let findings = run_detector(&model, ErrorCode::IncorrectInheritance);
    prop_assert_eq!(findings.len(), usize::from(n >= 2));
    Ok(())
}

// ---------------------------------------------------------------------------
// Result stores

fn code() -> impl Strategy<Value = ErrorCode> {
    prop::sample::select(ErrorCode::ALL.to_vec())
}

fn text() -> impl Strategy<Value = String> {
    prop_oneof![
        "[a-zA-Z0-9_ .,:;`'()-]{0,24}",
        any::<String>().prop_map(|s| s.chars().take(16).collect()),
        Just("quote \" backslash \\ newline \n tab \t".to_string()),
    ]
}

fn detail_for(code: ErrorCode) -> BoxedStrategy<FindingDetail> {
    match code {
        ErrorCode::LvalueRequired => (prop::sample::select(vec!["==", "!="]), text(), text())
            .prop_map(|(op, lhs, rhs)| FindingDetail::StringComparison { operator: op.to_string(), lhs, rhs })
            .boxed(),
        ErrorCode::IncorrectInheritance => prop::collection::vec("[A-Z][a-z]{0,5}", 2..5)
            .prop_map(|superclasses| FindingDetail::MultipleInheritance { superclasses })
            .boxed(),
        ErrorCode::Spaghetti => prop::collection::vec("[A-Z][a-z]{0,5}", 6..10)
            .prop_map(|chain| FindingDetail::DeepInheritance { depth: chain.len(), chain })
            .boxed(),
        ErrorCode::InconsistentTypeUsage => (text(), text(), text(), text(), text(), text())
            .prop_map(|(argument, descendant, base, callee, mutation, later_use)| {
                FindingDetail::InconsistentTypeUsage { argument, descendant, base, callee, mutation, later_use }
            })
            .boxed(),
        ErrorCode::IllicitFileUsage => (text(), text())
            .prop_map(|(variable, resource_type)| FindingDetail::UnclosedResource { variable, resource_type })
            .boxed(),
        ErrorCode::UndefinedLoop => prop::sample::select(vec!["while", "do-while", "for"])
            .prop_map(|k| FindingDetail::EmptyLoop { loop_kind: k.to_string() })
            .boxed(),
    }
}

fn finding(class: String, file: String) -> impl Strategy<Value = Finding> {
    code().prop_flat_map(move |code| {
        let (class, file) = (class.clone(), file.clone());
        (1..5000usize, text(), detail_for(code)).prop_map(move |(line, message, detail)| Finding {
            class_name: class.clone(),
            error_code: code,
            error_name: code.name().to_string(),
            file_path: file.clone(),
            line,
            message,
            detail,
        })
    })
}

fn record(class: String) -> impl Strategy<Value = ClassRecord> {
    let file = format!("pkg/{class}.java");
    prop::collection::vec(finding(class.clone(), file.clone()), 1..5).prop_map(move |findings| {
        let mut error_codes = Vec::new();
        for f in &findings {
            if !error_codes.contains(&f.error_code) {
                error_codes.push(f.error_code);
            }
        }
        ClassRecord { class_name: class.clone(), file_path: file.clone(), error_codes, findings }
    })
}

fn diagnostic() -> impl Strategy<Value = Diagnostic> {
    (
        prop::sample::select(vec![DiagnosticKind::Parse, DiagnosticKind::Model, DiagnosticKind::Io]),
        "[a-z]{1,6}(/[a-z]{1,6})?\\.java",
        0..3000usize,
        text(),
        prop::option::of((1..100usize, 0..50usize).prop_map(|(a, len)| (a, a + len))),
    )
        .prop_map(|(kind, file_path, line, message, skipped_span)| Diagnostic {
            kind,
            file_path,
            line,
            message,
            skipped_span,
        })
}

pub fn store() -> impl Strategy<Value = AnalysisStore> {
    (prop::collection::btree_set("[A-Z][A-Za-z0-9_]{0,7}", 0..8), text(), prop::collection::vec(diagnostic(), 0..5))
        .prop_flat_map(|(names, root, diagnostics)| {
            let records: Vec<_> = names.into_iter().map(record).collect();
            (records, Just(root), Just(diagnostics))
        })
        .prop_map(|(records, root, diagnostics)| AnalysisStore::new(root, records, diagnostics))
}

pub fn check_store_round_trip(store: &AnalysisStore) -> Result<(), TestCaseError> {
    let json = store.to_canonical_json();
    let back = AnalysisStore::from_json(&json).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&back, store);
    prop_assert_eq!(back.to_canonical_json(), json.clone());

    let dir = tempfile::tempdir().map_err(|e| TestCaseError::fail(e.to_string()))?;
    let path = dir.path().join("store.json");
    faultlint_core::save_store(store, &path).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let loaded = faultlint_core::load_store(&path).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&loaded, store);
    let bytes = std::fs::read_to_string(&path).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(bytes, json);
    Ok(())
}

// ---------------------------------------------------------------------------
// Aggregation and clustering under reordering

pub fn findings_and_shuffle() -> impl Strategy<Value = (Vec<Finding>, Vec<Finding>)> {
    prop::collection::vec(prop::sample::select(vec!["A", "B", "C", "D", "E", "F", "G"]), 1..25)
        .prop_flat_map(|classes| {
            classes.into_iter().map(|c| finding(c.to_string(), format!("{c}.java"))).collect::<Vec<_>>()
        })
        .prop_flat_map(|findings| {
            let shuffled = Just(findings.clone()).prop_shuffle();
            (Just(findings), shuffled)
        })
}

fn code_sets(records: &[ClassRecord]) -> BTreeMap<String, BTreeSet<ErrorCode>> {
    records.iter().map(|r| (r.class_name.clone(), r.error_codes.iter().copied().collect())).collect()
}

/// Pairwise oracle: two classes share a cluster exactly when their code sets
/// are equal, every faulty class is in exactly one cluster, and each
/// cluster's key is the sorted set of its members' codes.
pub fn check_partition(records: &[ClassRecord], clusters: &[Cluster]) -> Result<(), TestCaseError> {
    let sets = code_sets(records);
    let mut owner: BTreeMap<&str, usize> = BTreeMap::new();
    for (i, c) in clusters.iter().enumerate() {
        prop_assert!(!c.classes.is_empty());
        let names: Vec<&str> = c.error_set.iter().map(|e| e.name()).collect();
        prop_assert_eq!(&c.error_names, &names);
        for class in &c.classes {
            prop_assert!(owner.insert(class, i).is_none(), "{} in two clusters", class);
            let key: Vec<ErrorCode> = sets[class].iter().copied().collect();
            prop_assert_eq!(&key, &c.error_set);
        }
    }
    prop_assert_eq!(owner.len(), sets.len());
    for (a, sa) in &sets {
        for (b, sb) in &sets {
            prop_assert_eq!(owner[a.as_str()] == owner[b.as_str()], sa == sb);
        }
    }
    Ok(())
}

pub fn check_permutation_invariance(original: &[Finding], shuffled: &[Finding]) -> Result<(), TestCaseError> {
    let a = aggregate(original);
    let b = aggregate(shuffled);
    prop_assert_eq!(code_sets(&a), code_sets(&b));
    for (ra, rb) in a.iter().zip(&b) {
        let mut fa = ra.findings.clone();
        let mut fb = rb.findings.clone();
        faultlint_core::detectors::sort_findings(&mut fa);
        faultlint_core::detectors::sort_findings(&mut fb);
        prop_assert_eq!(fa, fb);
        // Display order is first-detection order within each input.
        let mut seen = Vec::new();
        for f in shuffled.iter().filter(|f| f.class_name == rb.class_name) {
            if !seen.contains(&f.error_code) {
                seen.push(f.error_code);
            }
        }
        prop_assert_eq!(&rb.error_codes, &seen);
    }
    let ca = cluster(&a);
    let cb = cluster(&b);
    prop_assert_eq!(&ca, &cb);
    check_partition(&b, &cb)?;

    let mut reversed = b.clone();
    reversed.reverse();
    prop_assert_eq!(cluster(&reversed), ca);
    Ok(())
}

/// Full pipeline over files presented in two orders.
pub fn pipeline_findings(sources: &[(String, String)]) -> Vec<Finding> {
    run_all(&model_of(sources), &RuleSet::all())
}
