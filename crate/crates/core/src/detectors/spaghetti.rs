//! Code 3: inheritance chains six or more levels deep.

use super::{Finding, FindingDetail};
use crate::catalog::ErrorCode;
use crate::model::ProgramModel;

/// Minimum number of extends-edges that is reported.
pub const SPAGHETTI_DEPTH: usize = 6;

/// Flags every corpus class whose depth reaches [`SPAGHETTI_DEPTH`]. Classes
/// on an inheritance cycle are skipped; the model reports the cycle.
pub fn detect_spaghetti(model: &ProgramModel) -> Vec<Finding> {
    let mut findings = Vec::new();
    for class in model.classes() {
        let Ok(chain) = model.hierarchy.superclass_chain(&class.decl.name) else {
            continue;
        };
        if chain.len() < SPAGHETTI_DEPTH {
            continue;
        }
        findings.push(Finding::new(
            class,
            ErrorCode::Spaghetti,
            class.decl.line,
            format!(
                "class `{}` is {} levels deep: {} -> {}",
                class.decl.name,
                chain.len(),
                class.decl.name,
                chain.join(" -> ")
            ),
            FindingDetail::DeepInheritance { depth: chain.len(), chain },
        ));
    }
    findings
}
