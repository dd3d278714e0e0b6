//! Per-class error lists built from the finding stream.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::ErrorCode;
use crate::detectors::Finding;

/// Error codes of one faulty class, in first-detection order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub class_name: String,
    pub file_path: String,
    pub error_codes: Vec<ErrorCode>,
    pub findings: Vec<Finding>,
}

impl ClassRecord {
    /// `1,6,5,`-style list used in listings.
    pub fn code_list(&self) -> String {
        self.error_codes.iter().map(|c| format!("{c},")).collect()
    }
}

/// Groups `findings` (already in run order) by class. Clean classes produce no record.
pub fn aggregate(findings: &[Finding]) -> Vec<ClassRecord> {
    let mut records: BTreeMap<&str, ClassRecord> = BTreeMap::new();
    for f in findings {
        let record = records.entry(&f.class_name).or_insert_with(|| ClassRecord {
            class_name: f.class_name.clone(),
            file_path: f.file_path.clone(),
            error_codes: Vec::new(),
            findings: Vec::new(),
        });
        if !record.error_codes.contains(&f.error_code) {
            record.error_codes.push(f.error_code);
        }
        record.findings.push(f.clone());
    }
    records.into_values().collect()
}
