//! Code 5: stream/file resources opened in a method and never closed there.
//!
//! Path-insensitive: a `v.close()` anywhere in the same method body, including
//! catch and finally blocks, counts as closing `v`. Closing a wrapper does not
//! close the stream it wraps.

use super::{Finding, FindingDetail};
use crate::ast::{ExprKind, StmtKind};
use crate::catalog::ErrorCode;
use crate::model::{simple_type_name, ProgramModel};

pub fn detect_illicit_file_usage(model: &ProgramModel) -> Vec<Finding> {
    let mut findings = Vec::new();
    for class in model.classes() {
        for method in &class.decl.methods {
            let Some(body) = &method.body else { continue };

            let mut opened = Vec::new();
            body.for_each_stmt(&mut |stmt| {
                if let StmtKind::LocalVar { name, init: Some(init), .. } = &stmt.kind {
                    if let ExprKind::New { ty, .. } = &init.kind {
                        if model.seed.is_resource_type(ty) {
                            opened.push((name.as_str(), simple_type_name(ty), init.line));
                        }
                    }
                }
            });
            if opened.is_empty() {
                continue;
            }

            let mut closed = Vec::new();
            body.for_each_expr(&mut |expr| {
                if let ExprKind::MethodCall { receiver: Some(r), name, args } = &expr.kind {
                    if name == "close" && args.is_empty() {
                        if let Some(var) = r.as_name() {
                            closed.push(var);
                        }
                    }
                }
            });

            for (var, ty, line) in opened {
                if closed.contains(&var) {
                    continue;
                }
                findings.push(Finding::new(
                    class,
                    ErrorCode::IllicitFileUsage,
                    line,
                    format!("{ty} `{var}` opened in `{}` is never closed", method.name),
                    FindingDetail::UnclosedResource { variable: var.to_string(), resource_type: ty.to_string() },
                ));
            }
        }
    }
    findings
}
