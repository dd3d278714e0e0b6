//! End-to-end pipeline over a corpus directory.

use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;
use walkdir::WalkDir;

use crate::aggregate::aggregate;
use crate::ast::CompilationUnit;
use crate::cluster::{cluster, Cluster};
use crate::detectors::{run_all, Finding, RuleSet};
use crate::model::build_model;
use crate::parser::parse_source;
use crate::report::{render_report, ReportFormat};
use crate::seed::{ExternalHierarchySeed, SeedError};
use crate::store::{AnalysisStore, Diagnostic, DiagnosticKind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub corpus_root: PathBuf,
    pub seed_file: Option<PathBuf>,
    pub enabled_rules: RuleSet,
    pub output_format: ReportFormat,
    pub store_output: Option<PathBuf>,
    pub strict_parse: bool,
}

impl RunConfig {
    pub fn new(corpus_root: impl Into<PathBuf>) -> Self {
        RunConfig {
            corpus_root: corpus_root.into(),
            seed_file: None,
            enabled_rules: RuleSet::all(),
            output_format: ReportFormat::Text,
            store_output: None,
            strict_parse: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("corpus root {0} does not exist")]
    MissingCorpus(String),
    #[error("corpus root {0} is not a directory")]
    NotADirectory(String),
    #[error(transparent)]
    Seed(#[from] SeedError),
}

#[derive(Debug, Clone)]
pub struct ScanOutcome {
    pub store: AnalysisStore,
    pub clusters: Vec<Cluster>,
    pub findings: Vec<Finding>,
    pub files_scanned: usize,
    pub classes_scanned: usize,
    pub parse_diagnostics: usize,
}

impl ScanOutcome {
    /// 0 when clean, 1 when findings exist (or parse diagnostics under `strict_parse`).
    pub fn exit_code(&self, strict_parse: bool) -> u8 {
        if !self.findings.is_empty() || (strict_parse && self.parse_diagnostics > 0) {
            1
        } else {
            0
        }
    }

    pub fn render(&self, format: ReportFormat) -> Vec<u8> {
        render_report(&self.store, &self.clusters, Some(self.classes_scanned), format)
    }
}

/// Every `*.java` file under `root`, hidden directories excluded, as
/// `(path relative to root with '/' separators, full path)` in sorted order.
pub fn collect_java_files(root: &Path) -> (Vec<(String, PathBuf)>, Vec<Diagnostic>) {
    let mut files = Vec::new();
    let mut diagnostics = Vec::new();
    let walker = WalkDir::new(root).follow_links(false).into_iter().filter_entry(|e| {
        e.depth() == 0 || !(e.file_type().is_dir() && e.file_name().to_string_lossy().starts_with('.'))
    });
    for entry in walker {
        match entry {
            Ok(e) => {
                if !e.file_type().is_file() || e.path().extension().is_none_or(|x| x != "java") {
                    continue;
                }
                let rel = e.path().strip_prefix(root).unwrap_or(e.path());
                let rel = rel.components().map(|c| c.as_os_str().to_string_lossy()).collect::<Vec<_>>().join("/");
                files.push((rel, e.path().to_path_buf()));
            }
            Err(err) => {
                let path = err
                    .path()
                    .and_then(|p| p.strip_prefix(root).ok())
                    .map_or_else(String::new, |p| p.display().to_string());
                diagnostics.push(Diagnostic {
                    kind: DiagnosticKind::Io,
                    file_path: path,
                    line: 0,
                    message: err.to_string(),
                    skipped_span: None,
                });
            }
        }
    }
    files.sort();
    (files, diagnostics)
}

/// Reads and parses the files in parallel; output order follows the input.
pub fn parse_files(files: &[(String, PathBuf)]) -> Vec<Result<CompilationUnit, Diagnostic>> {
    files
        .par_iter()
        .map(|(rel, path)| match fs::read_to_string(path) {
            Ok(text) => Ok(parse_source(&text, rel)),
            Err(err) => Err(Diagnostic {
                kind: DiagnosticKind::Io,
                file_path: rel.clone(),
                line: 0,
                message: format!("cannot read file: {err}"),
                skipped_span: None,
            }),
        })
        .collect()
}

pub fn scan(config: &RunConfig) -> Result<ScanOutcome, ScanError> {
    let root = &config.corpus_root;
    if !root.exists() {
        return Err(ScanError::MissingCorpus(root.display().to_string()));
    }
    if !root.is_dir() {
        return Err(ScanError::NotADirectory(root.display().to_string()));
    }
    let seed = match &config.seed_file {
        Some(path) => ExternalHierarchySeed::load(path)?,
        None => ExternalHierarchySeed::default(),
    };

    let (files, mut diagnostics) = collect_java_files(root);
    let mut units = Vec::with_capacity(files.len());
    for parsed in parse_files(&files) {
        match parsed {
            Ok(unit) => units.push(unit),
            Err(diag) => diagnostics.push(diag),
        }
    }

    let parse_diagnostics: usize = units.iter().map(|u| u.diagnostics.len()).sum();
    diagnostics.extend(units.iter().flat_map(|u| &u.diagnostics).map(|d| Diagnostic {
        kind: DiagnosticKind::Parse,
        file_path: d.file_path.clone(),
        line: d.line,
        message: d.message.clone(),
        skipped_span: Some(d.skipped_span),
    }));

    let model = build_model(&units, &seed);
    diagnostics.extend(model.diagnostics.iter().map(|d| Diagnostic {
        kind: DiagnosticKind::Model,
        file_path: d.file_path.clone(),
        line: d.line,
        message: d.message.clone(),
        skipped_span: None,
    }));

    let findings = run_all(&model, &config.enabled_rules);
    let records = aggregate(&findings);
    let clusters = cluster(&records);
    let store = AnalysisStore::new(root.display().to_string(), records, diagnostics);

    Ok(ScanOutcome {
        store,
        clusters,
        findings,
        files_scanned: files.len(),
        classes_scanned: model.classes().len(),
        parse_diagnostics,
    })
}
