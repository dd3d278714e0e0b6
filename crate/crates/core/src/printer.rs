//! Canonical source rendering of the syntax tree.
//!
//! Output re-parses to a structurally identical tree (lines aside). Package
//! and import declarations, modifiers and `throws` clauses are not part of the
//! tree and therefore not reproduced.

use std::fmt::{self, Write};

use crate::ast::*;

const INDENT: &str = "    ";

pub fn to_canonical(unit: &CompilationUnit) -> String {
    let mut out = String::new();
    for (i, class) in unit.classes.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        write_class(&mut out, class).expect("writing to a String cannot fail");
    }
    out
}

fn write_class(out: &mut String, class: &ClassDecl) -> fmt::Result {
    write!(out, "class {}", class.name)?;
    if !class.extends_list.is_empty() {
        write!(out, " extends {}", class.extends_list.join(", "))?;
    }
    if !class.implements_list.is_empty() {
        write!(out, " implements {}", class.implements_list.join(", "))?;
    }
    out.push_str(" {\n");
    for field in &class.fields {
        write!(out, "{INDENT}{} {}", field.ty, field.name)?;
        if let Some(init) = &field.init {
            write!(out, " = {init}")?;
        }
        out.push_str(";\n");
    }
    for method in &class.methods {
        out.push_str(INDENT);
        if let Some(ret) = &method.return_type {
            write!(out, "{ret} ")?;
        }
        write!(out, "{}(", method.name)?;
        for (i, p) in method.params.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            write!(out, "{} {}", p.ty, p.name)?;
        }
        out.push(')');
        match &method.body {
            Some(body) => {
                out.push(' ');
                write_block(out, body, 1)?;
                out.push('\n');
            }
            None => out.push_str(";\n"),
        }
    }
    out.push_str("}\n");
    Ok(())
}

fn indent(out: &mut String, depth: usize) {
    for _ in 0..depth {
        out.push_str(INDENT);
    }
}

fn write_block(out: &mut String, block: &Block, depth: usize) -> fmt::Result {
    out.push_str("{\n");
    for stmt in &block.stmts {
        indent(out, depth + 1);
        write_stmt(out, stmt, depth + 1)?;
        out.push('\n');
    }
    indent(out, depth);
    out.push('}');
    Ok(())
}

fn write_simple_stmt(out: &mut String, stmt: &Stmt) -> fmt::Result {
    match &stmt.kind {
        StmtKind::LocalVar { ty, name, init } => {
            write!(out, "{ty} {name}")?;
            if let Some(init) = init {
                write!(out, " = {init}")?;
            }
            Ok(())
        }
        StmtKind::Expr(e) => write!(out, "{e}"),
        _ => unreachable!("only declarations and expressions appear in for-init"),
    }
}

fn write_stmt(out: &mut String, stmt: &Stmt, depth: usize) -> fmt::Result {
    match &stmt.kind {
        StmtKind::Block(b) => write_block(out, b, depth),
        StmtKind::LocalVar { .. } | StmtKind::Expr(_) => {
            write_simple_stmt(out, stmt)?;
            out.push(';');
            Ok(())
        }
        StmtKind::If { cond, then_branch, else_branch } => {
            write!(out, "if ({cond}) ")?;
            write_stmt(out, then_branch, depth)?;
            if let Some(e) = else_branch {
                out.push_str(" else ");
                write_stmt(out, e, depth)?;
            }
            Ok(())
        }
        StmtKind::While { cond, body } => {
            write!(out, "while ({cond}) ")?;
            write_block(out, body, depth)
        }
        StmtKind::DoWhile { body, cond } => {
            out.push_str("do ");
            write_block(out, body, depth)?;
            write!(out, " while ({cond});")
        }
        StmtKind::For { init, cond, update, body } => {
            out.push_str("for (");
            for (i, s) in init.iter().enumerate() {
                if i > 0 {
                    out.push_str(", ");
                }
                match &s.kind {
                    // Declarators after the first share the leading type.
                    StmtKind::LocalVar { name, init, .. } if i > 0 => {
                        out.push_str(name);
                        if let Some(init) = init {
                            write!(out, " = {init}")?;
                        }
                    }
                    _ => write_simple_stmt(out, s)?,
                }
            }
            out.push(';');
            if let Some(c) = cond {
                write!(out, " {c}")?;
            }
            out.push(';');
            for (i, u) in update.iter().enumerate() {
                out.push_str(if i > 0 { ", " } else { " " });
                write!(out, "{u}")?;
            }
            out.push_str(") ");
            write_block(out, body, depth)
        }
        StmtKind::Try { body, catches, finally } => {
            out.push_str("try ");
            write_block(out, body, depth)?;
            for c in catches {
                write!(out, " catch ({} {}) ", c.types.join(" | "), c.name)?;
                write_block(out, &c.body, depth)?;
            }
            if let Some(f) = finally {
                out.push_str(" finally ");
                write_block(out, f, depth)?;
            }
            Ok(())
        }
        StmtKind::Return(None) => {
            out.push_str("return;");
            Ok(())
        }
        StmtKind::Return(Some(e)) => write!(out, "return {e};"),
        StmtKind::Throw(e) => write!(out, "throw {e};"),
        StmtKind::Break => {
            out.push_str("break;");
            Ok(())
        }
        StmtKind::Continue => {
            out.push_str("continue;");
            Ok(())
        }
        StmtKind::Empty => {
            out.push(';');
            Ok(())
        }
    }
}

fn write_args(f: &mut impl Write, args: &[Expr]) -> fmt::Result {
    f.write_char('(')?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write_expr(f, a)?;
    }
    f.write_char(')')
}

pub(crate) fn write_expr(f: &mut impl Write, expr: &Expr) -> fmt::Result {
    match &expr.kind {
        ExprKind::StringLit(s) => write!(f, "\"{s}\""),
        ExprKind::NumLit(n) => f.write_str(n),
        ExprKind::BoolLit(b) => write!(f, "{b}"),
        ExprKind::CharLit(c) => write!(f, "'{c}'"),
        ExprKind::NullLit => f.write_str("null"),
        ExprKind::Name(n) => f.write_str(n),
        ExprKind::FieldAccess { target, name } => {
            write_expr(f, target)?;
            write!(f, ".{name}")
        }
        ExprKind::MethodCall { receiver, name, args } => {
            if let Some(r) = receiver {
                write_expr(f, r)?;
                f.write_char('.')?;
            }
            f.write_str(name)?;
            write_args(f, args)
        }
        ExprKind::New { ty, args } => {
            write!(f, "new {ty}")?;
            write_args(f, args)
        }
        ExprKind::Binary { op, lhs, rhs } => {
            write_expr(f, lhs)?;
            write!(f, " {} ", op.symbol())?;
            write_expr(f, rhs)
        }
        ExprKind::Assign { op, lhs, rhs } => {
            write_expr(f, lhs)?;
            write!(f, " {} ", op.symbol())?;
            write_expr(f, rhs)
        }
        ExprKind::IncDec { op, target } => match op {
            IncDecOp::PreInc | IncDecOp::PreDec => {
                f.write_str(if *op == IncDecOp::PreInc { "++" } else { "--" })?;
                write_operand(f, target)
            }
            IncDecOp::PostInc => {
                write_expr(f, target)?;
                f.write_str("++")
            }
            IncDecOp::PostDec => {
                write_expr(f, target)?;
                f.write_str("--")
            }
        },
        ExprKind::Unary { op, operand } => {
            f.write_str(op.symbol())?;
            write_operand(f, operand)
        }
        ExprKind::Paren(inner) => {
            f.write_char('(')?;
            write_expr(f, inner)?;
            f.write_char(')')
        }
    }
}

// `- -x` must not collapse into `--x`.
fn write_operand(f: &mut impl Write, operand: &Expr) -> fmt::Result {
    let mut text = String::new();
    write_expr(&mut text, operand)?;
    if text.starts_with('+') || text.starts_with('-') {
        f.write_char(' ')?;
    }
    f.write_str(&text)
}
