//! Code 4: Inconsistent Type Usage.
//!
//! Reported at a call site when all of the following hold:
//!
//! 1. an argument is a variable whose declared type is a strict descendant of
//!    the callee's declared parameter type at that position;
//! 2. the callee, through that parameter, calls a method not listed as a pure
//!    accessor or assigns one of its fields;
//! 3. later in the caller (a later source line of the same method body) a
//!    method is invoked on the same variable.
//!
//! Callees are resolved by name and arity across the whole corpus.

use super::{Finding, FindingDetail};
use crate::ast::{Block, Expr, ExprKind, MethodDecl};
use crate::catalog::ErrorCode;
use crate::model::{static_type_of, walk_method, ProgramModel, Scope, ScopedVisitor, StaticType};
use crate::seed::ExternalHierarchySeed;

struct CallSite<'a> {
    call: &'a Expr,
    name: &'a str,
    /// `(variable, declared type)` per argument position, when the argument is a typed variable.
    args: Vec<Option<(&'a str, String)>>,
}

struct CallSites<'a> {
    sites: Vec<CallSite<'a>>,
}

impl<'a> ScopedVisitor<'a> for CallSites<'a> {
    fn visit_expr(&mut self, expr: &'a Expr, scope: &Scope<'a>) {
        let ExprKind::MethodCall { name, args, .. } = &expr.kind else { return };
        let args = args
            .iter()
            .map(|a| match (a.as_name(), static_type_of(a, scope)) {
                (Some(var), StaticType::Known(ty)) => Some((var, ty)),
                _ => None,
            })
            .collect();
        self.sites.push(CallSite { call: expr, name, args });
    }
}

/// First mutating use of `param` inside `body`, rendered for the report.
fn first_mutation(body: &Block, param: &str, seed: &ExternalHierarchySeed) -> Option<String> {
    let mut found = None;
    body.for_each_expr(&mut |expr| {
        if found.is_some() {
            return;
        }
        match &expr.kind {
            ExprKind::MethodCall { receiver: Some(r), name, .. }
                if r.as_name() == Some(param) && !seed.is_pure_accessor(name) =>
            {
                found = Some(format!("{param}.{name}()"));
            }
            ExprKind::Assign { lhs, .. } => {
                if let ExprKind::FieldAccess { target, name } = &lhs.kind {
                    if target.as_name() == Some(param) {
                        found = Some(format!("{param}.{name} assignment"));
                    }
                }
            }
            _ => {}
        }
    });
    found
}

/// First method invoked on `var` on a line after `line`.
fn later_use(body: &Block, var: &str, line: usize) -> Option<String> {
    let mut found: Option<(usize, String)> = None;
    body.for_each_expr(&mut |expr| {
        if let ExprKind::MethodCall { receiver: Some(r), name, .. } = &expr.kind {
            if r.as_name() == Some(var) && expr.line > line && found.as_ref().is_none_or(|(l, _)| expr.line < *l) {
                found = Some((expr.line, format!("{var}.{name}()")));
            }
        }
    });
    found.map(|(_, s)| s)
}

pub fn detect_itu(model: &ProgramModel) -> Vec<Finding> {
    let mut findings = Vec::new();
    for class in model.classes() {
        for caller in &class.decl.methods {
            let Some(caller_body) = &caller.body else { continue };
            let mut visitor = CallSites { sites: Vec::new() };
            walk_method(&class.decl, caller, &mut visitor);

            for site in &visitor.sites {
                if let Some(detail) = check_site(model, site, caller_body) {
                    let FindingDetail::InconsistentTypeUsage {
                        argument,
                        descendant,
                        base,
                        callee,
                        mutation,
                        later_use,
                    } = &detail
                    else {
                        unreachable!()
                    };
                    let message = format!(
                        "{descendant} `{argument}` passed as {base} to `{callee}`, which calls {mutation}; \
                         `{argument}` is used afterwards via {later_use}"
                    );
                    findings.push(Finding::new(
                        class,
                        ErrorCode::InconsistentTypeUsage,
                        site.call.line,
                        message,
                        detail,
                    ));
                }
            }
        }
    }
    findings
}

fn check_site(model: &ProgramModel, site: &CallSite<'_>, caller_body: &Block) -> Option<FindingDetail> {
    let callees = model.resolve_callee(site.name, site.args.len());
    for (pos, arg) in site.args.iter().enumerate() {
        let Some((var, arg_ty)) = arg else { continue };
        for callee in &callees {
            let method: &MethodDecl = callee.method;
            let param = &method.params[pos];
            if !model.is_descendant(arg_ty, &param.ty) {
                continue;
            }
            let Some(body) = &method.body else { continue };
            let Some(mutation) = first_mutation(body, &param.name, &model.seed) else { continue };
            let Some(use_after) = later_use(caller_body, var, site.call.line) else { continue };
            return Some(FindingDetail::InconsistentTypeUsage {
                argument: var.to_string(),
                descendant: arg_ty.clone(),
                base: param.ty.clone(),
                callee: format!("{}.{}", callee.class.decl.name, method.name),
                mutation,
                later_use: use_after,
            });
        }
    }
    None
}
