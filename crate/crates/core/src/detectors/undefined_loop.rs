//! Code 6: loops whose body does nothing.

use super::{Finding, FindingDetail};
use crate::ast::{Block, Stmt, StmtKind};
use crate::catalog::ErrorCode;
use crate::model::ProgramModel;

/// True for `;` and for blocks made only of such statements.
fn is_vacuous(stmt: &Stmt) -> bool {
    match &stmt.kind {
        StmtKind::Empty => true,
        StmtKind::Block(b) => is_empty_body(b),
        _ => false,
    }
}

pub(crate) fn is_empty_body(block: &Block) -> bool {
    block.stmts.iter().all(is_vacuous)
}

pub fn detect_undefined_loop(model: &ProgramModel) -> Vec<Finding> {
    let mut findings = Vec::new();
    for class in model.classes() {
        for method in &class.decl.methods {
            let Some(body) = &method.body else { continue };
            body.for_each_stmt(&mut |stmt| {
                let (kind, body) = match &stmt.kind {
                    StmtKind::While { body, .. } => ("while", body),
                    StmtKind::DoWhile { body, .. } => ("do-while", body),
                    StmtKind::For { body, .. } => ("for", body),
                    _ => return,
                };
                if is_empty_body(body) {
                    findings.push(Finding::new(
                        class,
                        ErrorCode::UndefinedLoop,
                        stmt.line,
                        format!("empty {kind} loop in `{}`", method.name),
                        FindingDetail::EmptyLoop { loop_kind: kind.to_string() },
                    ));
                }
            });
        }
    }
    findings
}
