//! The six fault detectors. Each is a pure function from a [`ProgramModel`]
//! to a list of [`Finding`]s.

mod file_usage;
mod inheritance;
mod itu;
mod lvalue;
mod spaghetti;
mod undefined_loop;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use file_usage::detect_illicit_file_usage;
pub use inheritance::detect_incorrect_inheritance;
pub use itu::detect_itu;
pub use lvalue::detect_lvalue_required;
pub use spaghetti::{detect_spaghetti, SPAGHETTI_DEPTH};
pub use undefined_loop::detect_undefined_loop;

use crate::catalog::{ErrorCode, InvalidErrorCode};
use crate::model::{ClassEntry, ProgramModel};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Finding {
    pub class_name: String,
    pub error_code: ErrorCode,
    pub error_name: String,
    pub file_path: String,
    pub line: usize,
    pub message: String,
    pub detail: FindingDetail,
}

impl Finding {
    pub fn new(class: &ClassEntry, code: ErrorCode, line: usize, message: String, detail: FindingDetail) -> Self {
        Finding {
            class_name: class.decl.name.clone(),
            error_code: code,
            error_name: code.name().to_string(),
            file_path: class.file_path.clone(),
            line,
            message,
            detail,
        }
    }
}

/// Code-specific evidence attached to a finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FindingDetail {
    StringComparison {
        operator: String,
        lhs: String,
        rhs: String,
    },
    MultipleInheritance {
        superclasses: Vec<String>,
    },
    DeepInheritance {
        depth: usize,
        /// Ancestors, nearest first.
        chain: Vec<String>,
    },
    InconsistentTypeUsage {
        argument: String,
        descendant: String,
        base: String,
        callee: String,
        mutation: String,
        later_use: String,
    },
    UnclosedResource {
        variable: String,
        resource_type: String,
    },
    EmptyLoop {
        loop_kind: String,
    },
}

/// A non-empty subset of the six error codes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet(BTreeSet<ErrorCode>);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RuleSetError {
    #[error("rule list is empty")]
    Empty,
    #[error("invalid rule `{0}`: expected a code from 1 to 6")]
    Invalid(String),
}

impl RuleSet {
    pub fn all() -> Self {
        RuleSet(ErrorCode::ALL.into_iter().collect())
    }

    pub fn new(codes: impl IntoIterator<Item = ErrorCode>) -> Result<Self, RuleSetError> {
        let set: BTreeSet<_> = codes.into_iter().collect();
        if set.is_empty() {
            return Err(RuleSetError::Empty);
        }
        Ok(RuleSet(set))
    }

    pub fn contains(&self, code: ErrorCode) -> bool {
        self.0.contains(&code)
    }

    pub fn codes(&self) -> impl Iterator<Item = ErrorCode> + '_ {
        self.0.iter().copied()
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        Self::all()
    }
}

impl FromStr for RuleSet {
    type Err = RuleSetError;

    /// Parses a comma-separated code list such as `1,3,5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let codes = s
            .split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| {
                p.parse::<u8>().map_err(|_| RuleSetError::Invalid(p.to_string())).and_then(|n| {
                    ErrorCode::try_from(n).map_err(|InvalidErrorCode(_)| RuleSetError::Invalid(p.to_string()))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        RuleSet::new(codes)
    }
}

impl fmt::Display for RuleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let codes: Vec<String> = self.codes().map(|c| c.to_string()).collect();
        f.write_str(&codes.join(","))
    }
}

/// Orders findings by `(file_path, line, error_code)`, with the remaining
/// fields as tie-breakers so the order is total.
pub fn sort_findings(findings: &mut [Finding]) {
    findings.sort_by(|a, b| {
        (&a.file_path, a.line, a.error_code, &a.class_name, &a.message).cmp(&(
            &b.file_path,
            b.line,
            b.error_code,
            &b.class_name,
            &b.message,
        ))
    });
}

pub fn run_detector(model: &ProgramModel, code: ErrorCode) -> Vec<Finding> {
    match code {
        ErrorCode::LvalueRequired => detect_lvalue_required(model),
        ErrorCode::IncorrectInheritance => detect_incorrect_inheritance(model),
        ErrorCode::Spaghetti => detect_spaghetti(model),
        ErrorCode::InconsistentTypeUsage => detect_itu(model),
        ErrorCode::IllicitFileUsage => detect_illicit_file_usage(model),
        ErrorCode::UndefinedLoop => detect_undefined_loop(model),
    }
}

/// Runs every enabled detector and returns the merged, sorted findings.
pub fn run_all(model: &ProgramModel, rules: &RuleSet) -> Vec<Finding> {
    let mut findings: Vec<Finding> = rules.codes().flat_map(|code| run_detector(model, code)).collect();
    sort_findings(&mut findings);
    findings
}
