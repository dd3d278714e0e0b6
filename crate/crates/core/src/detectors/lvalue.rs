//! Code 1: strings compared by reference with `==` or `!=`.

use super::{Finding, FindingDetail};
use crate::ast::{Expr, ExprKind};
use crate::catalog::ErrorCode;
use crate::model::{static_type_of, walk_field_initializers, walk_method, ProgramModel, Scope, ScopedVisitor};

struct Comparisons<'a> {
    hits: Vec<&'a Expr>,
}

impl<'a> ScopedVisitor<'a> for Comparisons<'a> {
    fn visit_expr(&mut self, expr: &'a Expr, scope: &Scope<'a>) {
        if let ExprKind::Binary { op, lhs, rhs } = &expr.kind {
            if op.is_equality() && (static_type_of(lhs, scope).is("String") || static_type_of(rhs, scope).is("String"))
            {
                self.hits.push(expr);
            }
        }
    }
}

pub fn detect_lvalue_required(model: &ProgramModel) -> Vec<Finding> {
    let mut findings = Vec::new();
    for class in model.classes() {
        let mut visitor = Comparisons { hits: Vec::new() };
        walk_field_initializers(&class.decl, &mut visitor);
        for method in &class.decl.methods {
            walk_method(&class.decl, method, &mut visitor);
        }
        for expr in visitor.hits {
            let ExprKind::Binary { op, lhs, rhs } = &expr.kind else { unreachable!() };
            findings.push(Finding::new(
                class,
                ErrorCode::LvalueRequired,
                expr.line,
                format!("strings `{lhs}` and `{rhs}` compared with `{}`; use equals()", op.symbol()),
                FindingDetail::StringComparison {
                    operator: op.symbol().to_string(),
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                },
            ));
        }
    }
    findings
}
