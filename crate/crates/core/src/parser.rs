//! Recursive-descent parser for the supported Java subset.
//!
//! The parser never fails. Constructs outside the subset are skipped up to the
//! next `;` or brace-balanced `}` and each skip is reported as one
//! [`ParseDiagnostic`]. A comma-separated `extends` clause is accepted as-is.

use crate::ast::*;
use crate::lexer::{tokenize, Token, TokenKind};

const MODIFIERS: &[&str] = &[
    "public",
    "private",
    "protected",
    "static",
    "final",
    "abstract",
    "native",
    "transient",
    "volatile",
    "strictfp",
    "synchronized",
];

const PRIMITIVES: &[&str] = &["boolean", "byte", "char", "short", "int", "long", "float", "double", "void"];

#[derive(Debug)]
struct ParseError {
    message: String,
    line: usize,
    /// Input ended inside a construct; recovery at inner levels cannot help.
    eof: bool,
}

type PResult<T> = Result<T, ParseError>;

/// Tokenizes and parses one source file. Lexical errors yield a unit with no
/// classes and a single diagnostic covering the whole file.
pub fn parse_source(source: &str, file_path: &str) -> CompilationUnit {
    match tokenize(source) {
        Ok(tokens) => parse_unit(&tokens, file_path),
        Err(err) => {
            let last_line = source.lines().count().max(1);
            CompilationUnit {
                file_path: file_path.to_string(),
                classes: Vec::new(),
                diagnostics: vec![ParseDiagnostic {
                    file_path: file_path.to_string(),
                    line: err.line(),
                    message: err.to_string(),
                    skipped_span: (1, last_line),
                }],
            }
        }
    }
}

pub fn parse_unit(tokens: &[Token], file_path: &str) -> CompilationUnit {
    let mut parser = Parser { tokens, pos: 0, file_path, diagnostics: Vec::new() };
    let classes = parser.compilation_unit();
    CompilationUnit { file_path: file_path.to_string(), classes, diagnostics: parser.diagnostics }
}

struct Parser<'t> {
    tokens: &'t [Token],
    pos: usize,
    file_path: &'t str,
    diagnostics: Vec<ParseDiagnostic>,
}

impl<'t> Parser<'t> {
    // ---- token helpers -------------------------------------------------

    fn peek(&self) -> Option<&'t Token> {
        self.tokens.get(self.pos)
    }

    fn peek_at(&self, n: usize) -> Option<&'t Token> {
        self.tokens.get(self.pos + n)
    }

    fn at_eof(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn bump(&mut self) -> Option<&'t Token> {
        let tok = self.tokens.get(self.pos);
        if tok.is_some() {
            self.pos += 1;
        }
        tok
    }

    fn check_punct(&self, p: &str) -> bool {
        self.peek().is_some_and(|t| t.is_punct(p))
    }

    fn check_op(&self, op: &str) -> bool {
        self.peek().is_some_and(|t| t.is_op(op))
    }

    fn check_keyword(&self, kw: &str) -> bool {
        self.peek().is_some_and(|t| t.is_keyword(kw))
    }

    fn eat_punct(&mut self, p: &str) -> bool {
        let hit = self.check_punct(p);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        let hit = self.check_keyword(kw);
        if hit {
            self.pos += 1;
        }
        hit
    }

    fn current_line(&self) -> usize {
        self.peek().or_else(|| self.tokens.last()).map_or(1, |t| t.line)
    }

    fn error<T>(&self, message: impl Into<String>) -> PResult<T> {
        Err(ParseError { message: message.into(), line: self.current_line(), eof: self.at_eof() })
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        match self.peek() {
            Some(tok) => self.error(format!("expected {expected}, found {tok}")),
            None => self.error(format!("expected {expected}, found end of file")),
        }
    }

    fn expect_punct(&mut self, p: &str) -> PResult<&'t Token> {
        if self.check_punct(p) {
            Ok(self.bump().expect("checked"))
        } else {
            self.unexpected(&format!("`{p}`"))
        }
    }

    fn expect_keyword(&mut self, kw: &str) -> PResult<&'t Token> {
        if self.check_keyword(kw) {
            Ok(self.bump().expect("checked"))
        } else {
            self.unexpected(&format!("`{kw}`"))
        }
    }

    fn expect_ident(&mut self) -> PResult<&'t Token> {
        match self.peek() {
            Some(t) if t.kind == TokenKind::Identifier => Ok(self.bump().expect("checked")),
            _ => self.unexpected("identifier"),
        }
    }

    // ---- recovery ------------------------------------------------------

    /// Skips to just past the next `;` at brace depth zero or the `}` that
    /// balances a `{` opened during the skip. A `}` that would close an
    /// enclosing construct is left in place.
    fn skip(&mut self) -> (usize, usize) {
        let first_line = self.current_line();
        let mut last_line = first_line;
        let mut depth = 0usize;
        let mut consumed = false;
        while let Some(tok) = self.peek() {
            if tok.is_punct("}") && depth == 0 && consumed {
                break;
            }
            self.pos += 1;
            consumed = true;
            last_line = tok.line;
            if tok.is_punct(";") && depth == 0 {
                break;
            }
            if tok.is_punct("{") {
                depth += 1;
            } else if tok.is_punct("}") {
                if depth <= 1 {
                    break;
                }
                depth -= 1;
            }
        }
        (first_line, last_line)
    }

    /// Rewinds to `start`, drops diagnostics recorded since, skips one
    /// construct and records the skip.
    fn recover(&mut self, start: usize, diag_mark: usize, err: ParseError) {
        self.pos = start;
        self.diagnostics.truncate(diag_mark);
        let span = self.skip();
        self.diagnostics.push(ParseDiagnostic {
            file_path: self.file_path.to_string(),
            line: err.line,
            message: err.message,
            skipped_span: span,
        });
    }

    // ---- declarations --------------------------------------------------

    fn compilation_unit(&mut self) -> Vec<ClassDecl> {
        let mut classes = Vec::new();

        if self.check_keyword("package") {
            let (start, mark) = (self.pos, self.diagnostics.len());
            if let Err(e) = self.package_or_import("package") {
                self.recover(start, mark, e);
            }
        }
        while self.check_keyword("import") {
            let (start, mark) = (self.pos, self.diagnostics.len());
            if let Err(e) = self.package_or_import("import") {
                self.recover(start, mark, e);
            }
        }

        while !self.at_eof() {
            if self.eat_punct(";") {
                continue;
            }
            let (start, mark) = (self.pos, self.diagnostics.len());
            match self.type_decl() {
                Ok(class) => classes.push(class),
                Err(e) => self.recover(start, mark, e),
            }
        }
        classes
    }

    fn package_or_import(&mut self, kw: &str) -> PResult<()> {
        self.expect_keyword(kw)?;
        if kw == "import" {
            self.eat_keyword("static");
        }
        self.expect_ident()?;
        while self.eat_punct(".") {
            if self.check_op("*") {
                self.bump();
                break;
            }
            self.expect_ident()?;
        }
        self.expect_punct(";")?;
        Ok(())
    }

    fn skip_modifiers(&mut self) -> PResult<()> {
        loop {
            match self.peek() {
                Some(t) if t.kind == TokenKind::Keyword && MODIFIERS.contains(&t.lexeme.as_str()) => {
                    self.pos += 1;
                }
                Some(t) if t.is_punct("@") => return self.error("annotations are not supported"),
                _ => return Ok(()),
            }
        }
    }

    fn type_decl(&mut self) -> PResult<ClassDecl> {
        self.skip_modifiers()?;
        match self.peek() {
            Some(t) if t.is_keyword("class") => {}
            Some(t) if t.is_keyword("interface") || t.is_keyword("enum") => {
                return self.error(format!("`{}` declarations are not supported", t.lexeme));
            }
            _ => return self.unexpected("class declaration"),
        }
        self.bump();
        let name_tok = self.expect_ident()?;
        if self.check_op("<") {
            return self.error("generic classes are not supported");
        }

        let mut extends_list = Vec::new();
        if self.eat_keyword("extends") {
            extends_list = self.type_name_list()?;
        }
        let mut implements_list = Vec::new();
        if self.eat_keyword("implements") {
            implements_list = self.type_name_list()?;
        }

        let mut class = ClassDecl {
            name: name_tok.lexeme.clone(),
            extends_list,
            implements_list,
            fields: Vec::new(),
            methods: Vec::new(),
            line: name_tok.line,
        };

        self.expect_punct("{")?;
        loop {
            if self.eat_punct("}") {
                break;
            }
            if self.at_eof() {
                return self.error(format!("unclosed body of class `{}`", class.name));
            }
            let (start, mark) = (self.pos, self.diagnostics.len());
            if let Err(e) = self.member(&mut class) {
                if e.eof {
                    return Err(e);
                }
                self.recover(start, mark, e);
            }
        }
        Ok(class)
    }

    fn type_name_list(&mut self) -> PResult<Vec<String>> {
        let mut names = vec![self.qualified_name()?];
        if self.check_op("<") {
            return self.error("generic types are not supported");
        }
        while self.eat_punct(",") {
            names.push(self.qualified_name()?);
            if self.check_op("<") {
                return self.error("generic types are not supported");
            }
        }
        Ok(names)
    }

    fn qualified_name(&mut self) -> PResult<String> {
        let mut name = self.expect_ident()?.lexeme.clone();
        while self.check_punct(".") && self.peek_at(1).is_some_and(|t| t.kind == TokenKind::Identifier) {
            self.pos += 1;
            name.push('.');
            name.push_str(&self.bump().expect("checked").lexeme);
        }
        Ok(name)
    }

    /// A type reference: primitive or qualified name, optionally `[]`.
    fn type_ref(&mut self) -> PResult<String> {
        let mut ty = match self.peek() {
            Some(t) if t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.lexeme.as_str()) => {
                self.pos += 1;
                t.lexeme.clone()
            }
            Some(t) if t.kind == TokenKind::Identifier => self.qualified_name()?,
            _ => return self.unexpected("type"),
        };
        if self.check_op("<") {
            return self.error("generic types are not supported");
        }
        if self.check_punct("[") {
            self.array_suffix()?;
            ty.push_str("[]");
        }
        Ok(ty)
    }

    fn array_suffix(&mut self) -> PResult<()> {
        self.expect_punct("[")?;
        self.expect_punct("]")?;
        if self.check_punct("[") {
            return self.error("multi-dimensional arrays are not supported");
        }
        Ok(())
    }

    fn member(&mut self, class: &mut ClassDecl) -> PResult<()> {
        self.skip_modifiers()?;
        let Some(tok) = self.peek() else {
            return self.unexpected("member");
        };
        if tok.is_punct(";") {
            self.pos += 1;
            return Ok(());
        }
        if tok.is_punct("{") {
            return self.error("initializer blocks are not supported");
        }
        if tok.is_keyword("class") || tok.is_keyword("interface") || tok.is_keyword("enum") {
            return self.error("nested type declarations are not supported");
        }
        if tok.is_op("<") {
            return self.error("generic methods are not supported");
        }

        if tok.kind == TokenKind::Identifier
            && tok.lexeme == class.name
            && self.peek_at(1).is_some_and(|t| t.is_punct("("))
        {
            self.pos += 1;
            let params = self.params()?;
            let body = self.method_body()?;
            class.methods.push(MethodDecl {
                name: tok.lexeme.clone(),
                return_type: None,
                params,
                body,
                is_constructor: true,
                line: tok.line,
            });
            return Ok(());
        }

        let ty = self.type_ref()?;
        let name_tok = self.expect_ident()?;
        if self.check_punct("(") {
            let params = self.params()?;
            if self.check_punct("[") {
                return self.error("array-returning method syntax is not supported");
            }
            let body = self.method_body()?;
            class.methods.push(MethodDecl {
                name: name_tok.lexeme.clone(),
                return_type: Some(ty),
                params,
                body,
                is_constructor: false,
                line: name_tok.line,
            });
            return Ok(());
        }

        let mut fields = Vec::new();
        let mut name_tok = name_tok;
        loop {
            let mut field_ty = ty.clone();
            if self.check_punct("[") {
                if ty.ends_with("[]") {
                    return self.error("multi-dimensional arrays are not supported");
                }
                self.array_suffix()?;
                field_ty.push_str("[]");
            }
            let init = if self.check_op("=") {
                self.pos += 1;
                Some(self.var_initializer()?)
            } else {
                None
            };
            fields.push(FieldDecl { ty: field_ty, name: name_tok.lexeme.clone(), init, line: name_tok.line });
            if self.eat_punct(",") {
                name_tok = self.expect_ident()?;
                continue;
            }
            self.expect_punct(";")?;
            break;
        }
        class.fields.extend(fields);
        Ok(())
    }

    fn var_initializer(&mut self) -> PResult<Expr> {
        if self.check_punct("{") {
            return self.error("array initializers are not supported");
        }
        self.expr()
    }

    fn params(&mut self) -> PResult<Vec<Param>> {
        self.expect_punct("(")?;
        let mut params = Vec::new();
        if self.eat_punct(")") {
            return Ok(params);
        }
        loop {
            while self.eat_keyword("final") {}
            if self.check_punct("@") {
                return self.error("annotations are not supported");
            }
            let mut ty = self.type_ref()?;
            if self.check_punct("...") {
                return self.error("variable-arity parameters are not supported");
            }
            let name = self.expect_ident()?.lexeme.clone();
            if self.check_punct("[") {
                if ty.ends_with("[]") {
                    return self.error("multi-dimensional arrays are not supported");
                }
                self.array_suffix()?;
                ty.push_str("[]");
            }
            params.push(Param { ty, name });
            if self.eat_punct(",") {
                continue;
            }
            self.expect_punct(")")?;
            return Ok(params);
        }
    }

    fn method_body(&mut self) -> PResult<Option<Block>> {
        if self.eat_keyword("throws") {
            self.type_name_list()?;
        }
        if self.eat_punct(";") {
            return Ok(None);
        }
        self.block().map(Some)
    }

    // ---- statements ----------------------------------------------------

    fn block(&mut self) -> PResult<Block> {
        let open = self.expect_punct("{")?;
        let mut stmts = Vec::new();
        loop {
            if self.eat_punct("}") {
                return Ok(Block { stmts, line: open.line });
            }
            if self.at_eof() {
                return self.error("unclosed block");
            }
            let (start, mark) = (self.pos, self.diagnostics.len());
            match self.block_item() {
                Ok(items) => stmts.extend(items),
                Err(e) if e.eof => return Err(e),
                Err(e) => self.recover(start, mark, e),
            }
        }
    }

    /// One block-level item. A declaration of several variables expands into
    /// one statement per variable.
    fn block_item(&mut self) -> PResult<Vec<Stmt>> {
        if self.looks_like_local_decl() {
            let decls = self.local_var_decl()?;
            self.expect_punct(";")?;
            Ok(decls)
        } else {
            Ok(vec![self.statement()?])
        }
    }

    fn looks_like_local_decl(&self) -> bool {
        let mut i = self.pos;
        let tok = |i: usize| self.tokens.get(i);
        while tok(i).is_some_and(|t| t.is_keyword("final")) {
            i += 1;
        }
        match tok(i) {
            Some(t) if t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.lexeme.as_str()) => {
                return t.lexeme != "void";
            }
            Some(t) if t.kind == TokenKind::Identifier => i += 1,
            _ => return false,
        }
        while tok(i).is_some_and(|t| t.is_punct(".")) && tok(i + 1).is_some_and(|t| t.kind == TokenKind::Identifier) {
            i += 2;
        }
        if tok(i).is_some_and(|t| t.is_op("<"))
            && tok(i + 1).is_some_and(|t| t.kind == TokenKind::Identifier || t.is_op("?"))
            && tok(i + 2).is_some_and(|t| t.is_op(">") || t.is_punct(",") || t.is_op("<"))
        {
            return true;
        }
        while tok(i).is_some_and(|t| t.is_punct("[")) && tok(i + 1).is_some_and(|t| t.is_punct("]")) {
            i += 2;
        }
        tok(i).is_some_and(|t| t.kind == TokenKind::Identifier)
    }

    fn local_var_decl(&mut self) -> PResult<Vec<Stmt>> {
        while self.eat_keyword("final") {}
        let ty = self.type_ref()?;
        let mut decls = Vec::new();
        loop {
            let name_tok = self.expect_ident()?;
            let mut var_ty = ty.clone();
            if self.check_punct("[") {
                if ty.ends_with("[]") {
                    return self.error("multi-dimensional arrays are not supported");
                }
                self.array_suffix()?;
                var_ty.push_str("[]");
            }
            let init = if self.check_op("=") {
                self.pos += 1;
                Some(self.var_initializer()?)
            } else {
                None
            };
            decls
                .push(Stmt::new(StmtKind::LocalVar { ty: var_ty, name: name_tok.lexeme.clone(), init }, name_tok.line));
            if !self.eat_punct(",") {
                return Ok(decls);
            }
        }
    }

    /// A statement in single-statement position (branch or loop body).
    fn sub_statement(&mut self) -> PResult<Stmt> {
        let line = self.current_line();
        let mut items = self.block_item()?;
        if items.len() == 1 {
            Ok(items.pop().expect("one item"))
        } else {
            Ok(Stmt::new(StmtKind::Block(Block { stmts: items, line }), line))
        }
    }

    fn loop_body(&mut self) -> PResult<Block> {
        let stmt = self.sub_statement()?;
        Ok(match stmt.kind {
            StmtKind::Block(b) => b,
            _ => {
                let line = stmt.line;
                Block { stmts: vec![stmt], line }
            }
        })
    }

    fn paren_expr(&mut self) -> PResult<Expr> {
        self.expect_punct("(")?;
        let e = self.expr()?;
        self.expect_punct(")")?;
        Ok(e)
    }

    fn statement(&mut self) -> PResult<Stmt> {
        let Some(tok) = self.peek() else {
            return self.unexpected("statement");
        };
        let line = tok.line;

        if tok.is_punct("{") {
            let block = self.block()?;
            return Ok(Stmt::new(StmtKind::Block(block), line));
        }
        if tok.is_punct(";") {
            self.pos += 1;
            return Ok(Stmt::new(StmtKind::Empty, line));
        }

        if tok.kind == TokenKind::Keyword {
            match tok.lexeme.as_str() {
                "if" => {
                    self.pos += 1;
                    let cond = self.paren_expr()?;
                    let then_branch = Box::new(self.sub_statement()?);
                    let else_branch =
                        if self.eat_keyword("else") { Some(Box::new(self.sub_statement()?)) } else { None };
                    return Ok(Stmt::new(StmtKind::If { cond, then_branch, else_branch }, line));
                }
                "while" => {
                    self.pos += 1;
                    let cond = self.paren_expr()?;
                    let body = self.loop_body()?;
                    return Ok(Stmt::new(StmtKind::While { cond, body }, line));
                }
                "do" => {
                    self.pos += 1;
                    let body = self.loop_body()?;
                    self.expect_keyword("while")?;
                    let cond = self.paren_expr()?;
                    self.expect_punct(";")?;
                    return Ok(Stmt::new(StmtKind::DoWhile { body, cond }, line));
                }
                "for" => return self.for_statement(),
                "try" => return self.try_statement(),
                "return" => {
                    self.pos += 1;
                    let value = if self.check_punct(";") { None } else { Some(self.expr()?) };
                    self.expect_punct(";")?;
                    return Ok(Stmt::new(StmtKind::Return(value), line));
                }
                "throw" => {
                    self.pos += 1;
                    let value = self.expr()?;
                    self.expect_punct(";")?;
                    return Ok(Stmt::new(StmtKind::Throw(value), line));
                }
                "break" | "continue" => {
                    self.pos += 1;
                    self.expect_punct(";")?;
                    let kind = if tok.lexeme == "break" { StmtKind::Break } else { StmtKind::Continue };
                    return Ok(Stmt::new(kind, line));
                }
                "this" | "super" | "new" | "true" | "false" | "null" => {}
                other => return self.error(format!("`{other}` statements are not supported")),
            }
        }
        if tok.kind == TokenKind::Identifier && self.peek_at(1).is_some_and(|t| t.is_op(":")) {
            return self.error("labeled statements are not supported");
        }

        let e = self.expr()?;
        self.expect_punct(";")?;
        Ok(Stmt::new(StmtKind::Expr(e), line))
    }

    fn for_statement(&mut self) -> PResult<Stmt> {
        let line = self.expect_keyword("for")?.line;
        self.expect_punct("(")?;

        let mut init = Vec::new();
        if !self.check_punct(";") {
            if self.looks_like_local_decl() {
                init = self.local_var_decl()?;
                if self.check_op(":") {
                    return self.error("enhanced for loops are not supported");
                }
            } else {
                loop {
                    let e_line = self.current_line();
                    let e = self.expr()?;
                    init.push(Stmt::new(StmtKind::Expr(e), e_line));
                    if !self.eat_punct(",") {
                        break;
                    }
                }
            }
        }
        self.expect_punct(";")?;
        let cond = if self.check_punct(";") { None } else { Some(self.expr()?) };
        self.expect_punct(";")?;
        let mut update = Vec::new();
        if !self.check_punct(")") {
            loop {
                update.push(self.expr()?);
                if !self.eat_punct(",") {
                    break;
                }
            }
        }
        self.expect_punct(")")?;
        let body = self.loop_body()?;
        Ok(Stmt::new(StmtKind::For { init, cond, update, body }, line))
    }

    fn try_statement(&mut self) -> PResult<Stmt> {
        let line = self.expect_keyword("try")?.line;
        if self.check_punct("(") {
            return self.error("try-with-resources is not supported");
        }
        let body = self.block()?;
        let mut catches = Vec::new();
        while self.check_keyword("catch") {
            let catch_line = self.bump().expect("checked").line;
            self.expect_punct("(")?;
            while self.eat_keyword("final") {}
            let mut types = vec![self.qualified_name()?];
            while self.check_op("|") {
                self.pos += 1;
                types.push(self.qualified_name()?);
            }
            let name = self.expect_ident()?.lexeme.clone();
            self.expect_punct(")")?;
            let body = self.block()?;
            catches.push(CatchClause { types, name, body, line: catch_line });
        }
        let finally = if self.eat_keyword("finally") { Some(self.block()?) } else { None };
        if catches.is_empty() && finally.is_none() {
            return self.unexpected("`catch` or `finally`");
        }
        Ok(Stmt::new(StmtKind::Try { body, catches, finally }, line))
    }

    // ---- expressions ---------------------------------------------------

    fn expr(&mut self) -> PResult<Expr> {
        let lhs = self.binary(0)?;
        let op = match self.peek() {
            Some(t) if t.kind == TokenKind::Operator => match t.lexeme.as_str() {
                "=" => AssignOp::Assign,
                "+=" => AssignOp::Add,
                "-=" => AssignOp::Sub,
                "*=" => AssignOp::Mul,
                "/=" => AssignOp::Div,
                "%=" => AssignOp::Rem,
                _ => return Ok(lhs),
            },
            _ => return Ok(lhs),
        };
        let op_tok = self.bump().expect("peeked");
        if !matches!(lhs.kind, ExprKind::Name(_) | ExprKind::FieldAccess { .. }) {
            return Err(ParseError { message: "invalid assignment target".to_string(), line: op_tok.line, eof: false });
        }
        let rhs = self.expr()?;
        Ok(Expr::new(ExprKind::Assign { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, op_tok.line))
    }

    /// Precedence climbing over the binary operator levels, lowest first.
    fn binary(&mut self, level: usize) -> PResult<Expr> {
        const LEVELS: &[&[(&str, BinaryOp)]] = &[
            &[("||", BinaryOp::Or)],
            &[("&&", BinaryOp::And)],
            &[("==", BinaryOp::Eq), ("!=", BinaryOp::Ne)],
            &[("<", BinaryOp::Lt), (">", BinaryOp::Gt), ("<=", BinaryOp::Le), (">=", BinaryOp::Ge)],
            &[("+", BinaryOp::Add), ("-", BinaryOp::Sub)],
            &[("*", BinaryOp::Mul), ("/", BinaryOp::Div), ("%", BinaryOp::Rem)],
        ];
        if level == LEVELS.len() {
            return self.unary();
        }
        let mut lhs = self.binary(level + 1)?;
        loop {
            let Some(tok) = self.peek() else { return Ok(lhs) };
            if tok.kind != TokenKind::Operator {
                return Ok(lhs);
            }
            let Some(&(_, op)) = LEVELS[level].iter().find(|(sym, _)| tok.lexeme == *sym) else {
                return Ok(lhs);
            };
            self.pos += 1;
            let rhs = self.binary(level + 1)?;
            lhs = Expr::new(ExprKind::Binary { op, lhs: Box::new(lhs), rhs: Box::new(rhs) }, tok.line);
        }
    }

    fn unary(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek() else {
            return self.unexpected("expression");
        };
        if tok.kind == TokenKind::Operator {
            let line = tok.line;
            let unary = match tok.lexeme.as_str() {
                "!" => Some(UnaryOp::Not),
                "-" => Some(UnaryOp::Neg),
                "+" => Some(UnaryOp::Plus),
                _ => None,
            };
            if let Some(op) = unary {
                self.pos += 1;
                let operand = Box::new(self.unary()?);
                return Ok(Expr::new(ExprKind::Unary { op, operand }, line));
            }
            let incdec = match tok.lexeme.as_str() {
                "++" => Some(IncDecOp::PreInc),
                "--" => Some(IncDecOp::PreDec),
                _ => None,
            };
            if let Some(op) = incdec {
                self.pos += 1;
                let target = Box::new(self.unary()?);
                return Ok(Expr::new(ExprKind::IncDec { op, target }, line));
            }
        }
        self.postfix()
    }

    fn postfix(&mut self) -> PResult<Expr> {
        let mut e = self.primary()?;
        loop {
            if self.check_punct(".") {
                self.pos += 1;
                let name_tok = self.expect_ident()?;
                if self.check_punct("(") {
                    let args = self.args()?;
                    e = Expr::new(
                        ExprKind::MethodCall { receiver: Some(Box::new(e)), name: name_tok.lexeme.clone(), args },
                        name_tok.line,
                    );
                } else {
                    e = Expr::new(
                        ExprKind::FieldAccess { target: Box::new(e), name: name_tok.lexeme.clone() },
                        name_tok.line,
                    );
                }
            } else if self.check_punct("[") {
                return self.error("array access is not supported");
            } else if self.check_op("++") || self.check_op("--") {
                let tok = self.bump().expect("checked");
                let op = if tok.lexeme == "++" { IncDecOp::PostInc } else { IncDecOp::PostDec };
                e = Expr::new(ExprKind::IncDec { op, target: Box::new(e) }, tok.line);
            } else {
                return Ok(e);
            }
        }
    }

    fn args(&mut self) -> PResult<Vec<Expr>> {
        self.expect_punct("(")?;
        let mut args = Vec::new();
        if self.eat_punct(")") {
            return Ok(args);
        }
        loop {
            args.push(self.expr()?);
            if self.eat_punct(",") {
                continue;
            }
            self.expect_punct(")")?;
            return Ok(args);
        }
    }

    fn primary(&mut self) -> PResult<Expr> {
        let Some(tok) = self.peek() else {
            return self.unexpected("expression");
        };
        let line = tok.line;
        let strip_quotes = |s: &str| s[1..s.len() - 1].to_string();
        let kind = match tok.kind {
            TokenKind::StringLiteral => {
                self.pos += 1;
                ExprKind::StringLit(strip_quotes(&tok.lexeme))
            }
            TokenKind::CharLiteral => {
                self.pos += 1;
                ExprKind::CharLit(strip_quotes(&tok.lexeme))
            }
            TokenKind::NumericLiteral => {
                self.pos += 1;
                ExprKind::NumLit(tok.lexeme.clone())
            }
            TokenKind::Identifier => {
                self.pos += 1;
                if self.check_punct("(") {
                    let args = self.args()?;
                    ExprKind::MethodCall { receiver: None, name: tok.lexeme.clone(), args }
                } else {
                    ExprKind::Name(tok.lexeme.clone())
                }
            }
            TokenKind::Keyword => match tok.lexeme.as_str() {
                "true" | "false" => {
                    self.pos += 1;
                    ExprKind::BoolLit(tok.lexeme == "true")
                }
                "null" => {
                    self.pos += 1;
                    ExprKind::NullLit
                }
                "this" | "super" => {
                    self.pos += 1;
                    if self.check_punct("(") {
                        let args = self.args()?;
                        ExprKind::MethodCall { receiver: None, name: tok.lexeme.clone(), args }
                    } else {
                        ExprKind::Name(tok.lexeme.clone())
                    }
                }
                "new" => {
                    self.pos += 1;
                    let ty = match self.peek() {
                        Some(t) if t.kind == TokenKind::Identifier => self.qualified_name()?,
                        Some(t) if t.kind == TokenKind::Keyword && PRIMITIVES.contains(&t.lexeme.as_str()) => {
                            return self.error("array creation is not supported");
                        }
                        _ => return self.unexpected("type after `new`"),
                    };
                    if self.check_op("<") {
                        return self.error("generic types are not supported");
                    }
                    if self.check_punct("[") {
                        return self.error("array creation is not supported");
                    }
                    let args = self.args()?;
                    if self.check_punct("{") {
                        return self.error("anonymous classes are not supported");
                    }
                    ExprKind::New { ty, args }
                }
                _ => return self.unexpected("expression"),
            },
            TokenKind::Punctuator if tok.lexeme == "(" => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect_punct(")")?;
                ExprKind::Paren(Box::new(inner))
            }
            _ => return self.unexpected("expression"),
        };
        Ok(Expr::new(kind, line))
    }
}
