//! Human-readable and JSON reports over a result store and its clusters.

use std::fmt::Write;
use std::str::FromStr;

use crate::cluster::Cluster;
use crate::store::{canonical_json, AnalysisStore};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ReportFormat {
    #[default]
    Text,
    Json,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format `{other}` (expected text or json)")),
        }
    }
}

pub const NO_FAULTY_CLASSES: &str = "no faulty classes";

/// Renders the report. `classes_scanned`, when known, adds a summary of
/// scanned versus faulty classes.
pub fn render_report(
    store: &AnalysisStore,
    clusters: &[Cluster],
    classes_scanned: Option<usize>,
    format: ReportFormat,
) -> Vec<u8> {
    match format {
        ReportFormat::Text => render_text(store, clusters, classes_scanned).into_bytes(),
        ReportFormat::Json => render_json(store, clusters, classes_scanned).into_bytes(),
    }
}

fn render_json(store: &AnalysisStore, clusters: &[Cluster], classes_scanned: Option<usize>) -> String {
    let mut value = store.to_value();
    let object = value.as_object_mut().expect("store is a JSON object");
    object.insert("clusters".to_string(), serde_json::to_value(clusters).expect("clusters serialize"));
    if let Some(scanned) = classes_scanned {
        object.insert(
            "summary".to_string(),
            serde_json::json!({ "classes_scanned": scanned, "faulty_classes": store.records.len() }),
        );
    }
    canonical_json(&value)
}

fn render_text(store: &AnalysisStore, clusters: &[Cluster], classes_scanned: Option<usize>) -> String {
    let mut out = String::new();
    let finding_count: usize = store.records.iter().map(|r| r.findings.len()).sum();
    let _ = writeln!(out, "faultlint report");
    let _ = writeln!(out, "corpus: {}", store.corpus_root);
    match classes_scanned {
        Some(n) => {
            let _ = writeln!(
                out,
                "classes scanned: {n}, faulty classes: {}, findings: {finding_count}",
                store.records.len()
            );
        }
        None => {
            let _ = writeln!(out, "faulty classes: {}, findings: {finding_count}", store.records.len());
        }
    }
    out.push('\n');

    out.push_str("Class errors\n");
    if store.records.is_empty() {
        let _ = writeln!(out, "  {NO_FAULTY_CLASSES}");
    }
    for record in &store.records {
        let _ = writeln!(out, "  {} ({}) errlst: {}", record.class_name, record.file_path, record.code_list());
        for code in &record.error_codes {
            let _ = writeln!(out, "    [{}] {}", code, code.name());
            for f in record.findings.iter().filter(|f| f.error_code == *code) {
                let _ = writeln!(out, "        {}:{}: {}", f.file_path, f.line, f.message);
            }
        }
    }
    out.push('\n');

    out.push_str("Clusters\n");
    let rows: Vec<(String, String)> =
        clusters.iter().map(|c| (c.error_names.join(", "), c.classes.join(", "))).collect();
    let width = rows.iter().map(|(e, _)| e.len()).chain(std::iter::once("Errors".len())).max().unwrap_or(0);
    let _ = writeln!(out, "  {:<width$} | Classes", "Errors");
    let _ = writeln!(out, "  {}-+-{}", "-".repeat(width), "-".repeat("Classes".len()));
    for (errors, classes) in &rows {
        let _ = writeln!(out, "  {errors:<width$} | {classes}");
    }

    if !store.diagnostics.is_empty() {
        out.push('\n');
        let _ = writeln!(out, "Diagnostics ({})", store.diagnostics.len());
        for d in &store.diagnostics {
            let kind = match d.kind {
                crate::store::DiagnosticKind::Parse => "parse",
                crate::store::DiagnosticKind::Model => "model",
                crate::store::DiagnosticKind::Io => "io",
            };
            let _ = writeln!(out, "  {}:{}: {kind}: {}", d.file_path, d.line, d.message);
        }
    }
    out
}
