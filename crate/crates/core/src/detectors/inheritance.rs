//! Code 2: a class header naming more than one superclass.

use super::{Finding, FindingDetail};
use crate::catalog::ErrorCode;
use crate::model::ProgramModel;

pub fn detect_incorrect_inheritance(model: &ProgramModel) -> Vec<Finding> {
    model
        .classes()
        .iter()
        .filter(|c| c.decl.extends_list.len() > 1)
        .map(|class| {
            let supers = &class.decl.extends_list;
            Finding::new(
                class,
                ErrorCode::IncorrectInheritance,
                class.decl.line,
                format!(
                    "class `{}` extends {} classes ({}); use interfaces instead",
                    class.decl.name,
                    supers.len(),
                    supers.join(", ")
                ),
                FindingDetail::MultipleInheritance { superclasses: supers.clone() },
            )
        })
        .collect()
}
