//! JSON result store (`faultlint-results.json`).
//!
//! Top-level keys: `schema_version`, `corpus_root`, `records`, `catalog`,
//! `diagnostics`. Serialization is canonical: object keys are sorted, records
//! are sorted by class name and diagnostics by position, so the same corpus
//! always produces the same bytes.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::aggregate::ClassRecord;
use crate::catalog::{catalog_dump, ErrorCode};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_STORE_FILE: &str = "faultlint-results.json";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiagnosticKind {
    Parse,
    Model,
    Io,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Diagnostic {
    pub kind: DiagnosticKind,
    pub file_path: String,
    pub line: usize,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub skipped_span: Option<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisStore {
    pub schema_version: u32,
    pub corpus_root: String,
    pub records: Vec<ClassRecord>,
    pub catalog: BTreeMap<String, String>,
    pub diagnostics: Vec<Diagnostic>,
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("store file is empty")]
    Empty,
    #[error("store is not valid JSON: {0}")]
    Json(String),
    #[error("store has no schema_version")]
    MissingVersion,
    #[error("unsupported store schema_version {0}")]
    UnsupportedVersion(String),
    #[error("store content is inconsistent: {0}")]
    Inconsistent(String),
}

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("cannot access store {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid store {path}: {source}")]
    Format { path: String, source: FormatError },
}

impl AnalysisStore {
    pub fn new(
        corpus_root: impl Into<String>,
        mut records: Vec<ClassRecord>,
        mut diagnostics: Vec<Diagnostic>,
    ) -> Self {
        records.sort_by(|a, b| a.class_name.cmp(&b.class_name));
        sort_diagnostics(&mut diagnostics);
        AnalysisStore {
            schema_version: SCHEMA_VERSION,
            corpus_root: corpus_root.into(),
            records,
            catalog: catalog_dump(),
            diagnostics,
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("store serializes to JSON")
    }

    /// Canonical pretty-printed JSON, newline-terminated.
    pub fn to_canonical_json(&self) -> String {
        canonical_json(&self.to_value())
    }

    pub fn from_json(text: &str) -> Result<Self, FormatError> {
        if text.trim().is_empty() {
            return Err(FormatError::Empty);
        }
        let value: serde_json::Value = serde_json::from_str(text).map_err(|e| FormatError::Json(e.to_string()))?;
        Self::from_value(value)
    }

    pub fn from_value(value: serde_json::Value) -> Result<Self, FormatError> {
        let version = value.get("schema_version").ok_or(FormatError::MissingVersion)?;
        if version.as_u64() != Some(u64::from(SCHEMA_VERSION)) {
            let shown = version.as_str().map_or_else(|| version.to_string(), str::to_string);
            return Err(FormatError::UnsupportedVersion(shown));
        }
        let store: AnalysisStore = serde_json::from_value(value).map_err(|e| FormatError::Json(e.to_string()))?;
        store.validate()?;
        Ok(store)
    }

    fn validate(&self) -> Result<(), FormatError> {
        if self.catalog != catalog_dump() {
            return Err(FormatError::Inconsistent("catalog does not match the error codes".to_string()));
        }
        for r in &self.records {
            for f in &r.findings {
                if ErrorCode::from_name(&f.error_name) != Some(f.error_code) {
                    return Err(FormatError::Inconsistent(format!(
                        "finding in `{}` has code {} but name `{}`",
                        r.class_name, f.error_code, f.error_name
                    )));
                }
            }
        }
        Ok(())
    }
}

pub fn sort_diagnostics(diagnostics: &mut [Diagnostic]) {
    diagnostics
        .sort_by(|a, b| (&a.file_path, a.line, a.kind, &a.message).cmp(&(&b.file_path, b.line, b.kind, &b.message)));
}

/// Pretty JSON with sorted object keys and a trailing newline.
pub fn canonical_json(value: &serde_json::Value) -> String {
    // serde_json's default map is a BTreeMap, so keys come out sorted.
    let mut text = serde_json::to_string_pretty(value).expect("JSON value serializes");
    text.push('\n');
    text
}

pub fn save_store(store: &AnalysisStore, path: &Path) -> Result<(), StoreError> {
    fs::write(path, store.to_canonical_json())
        .map_err(|source| StoreError::Io { path: path.display().to_string(), source })
}

pub fn load_store(path: &Path) -> Result<AnalysisStore, StoreError> {
    let display = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| StoreError::Io { path: display.clone(), source })?;
    AnalysisStore::from_json(&text).map_err(|source| StoreError::Format { path: display, source })
}
