//! Hand-written tokenizer for the supported Java subset.
//!
//! Whitespace and comments are consumed but never emitted. Every token keeps
//! its byte offset, so `&source[tok.offset..tok.offset + tok.lexeme.len()]`
//! is always the lexeme itself.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Keyword,
    Identifier,
    StringLiteral,
    CharLiteral,
    NumericLiteral,
    Punctuator,
    Operator,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub lexeme: String,
    /// 1-based.
    pub line: usize,
    /// 1-based, counted in characters.
    pub column: usize,
    /// Byte offset of the first character.
    pub offset: usize,
}

impl Token {
    pub fn is(&self, kind: TokenKind, lexeme: &str) -> bool {
        self.kind == kind && self.lexeme == lexeme
    }

    pub fn is_keyword(&self, kw: &str) -> bool {
        self.is(TokenKind::Keyword, kw)
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.is(TokenKind::Punctuator, p)
    }

    pub fn is_op(&self, op: &str) -> bool {
        self.is(TokenKind::Operator, op)
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{}`", self.lexeme)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("unterminated string literal at {line}:{column}")]
    UnterminatedString { line: usize, column: usize },
    #[error("unterminated character literal at {line}:{column}")]
    UnterminatedChar { line: usize, column: usize },
    #[error("unterminated block comment at {line}:{column}")]
    UnterminatedComment { line: usize, column: usize },
}

impl LexError {
    pub fn line(&self) -> usize {
        match *self {
            LexError::UnterminatedString { line, .. }
            | LexError::UnterminatedChar { line, .. }
            | LexError::UnterminatedComment { line, .. } => line,
        }
    }
}

pub const KEYWORDS: &[&str] = &[
    "abstract",
    "assert",
    "boolean",
    "break",
    "byte",
    "case",
    "catch",
    "char",
    "class",
    "const",
    "continue",
    "default",
    "do",
    "double",
    "else",
    "enum",
    "extends",
    "false",
    "final",
    "finally",
    "float",
    "for",
    "goto",
    "if",
    "implements",
    "import",
    "instanceof",
    "int",
    "interface",
    "long",
    "native",
    "new",
    "null",
    "package",
    "private",
    "protected",
    "public",
    "return",
    "short",
    "static",
    "strictfp",
    "super",
    "switch",
    "synchronized",
    "this",
    "throw",
    "throws",
    "transient",
    "true",
    "try",
    "void",
    "volatile",
    "while",
];

const PUNCTUATORS: &[&str] = &["...", "::", "(", ")", "{", "}", "[", "]", ";", ",", ".", "@"];

// Longest first, so a linear scan implements maximal munch.
const OPERATORS: &[&str] = &[
    ">>>=", "<<=", ">>=", ">>>", "==", "!=", "<=", ">=", "&&", "||", "++", "--", "+=", "-=", "*=", "/=", "%=", "&=",
    "|=", "^=", "<<", ">>", "->", "=", "<", ">", "!", "~", "?", ":", "+", "-", "*", "/", "%", "&", "|", "^",
];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn peek_nth(&self, n: usize) -> Option<char> {
        self.src[self.pos..].chars().nth(n)
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

/// Splits `source` into tokens.
pub fn tokenize(source: &str) -> Result<Vec<Token>, LexError> {
    let mut cur = Cursor { src: source, pos: 0, line: 1, column: 1 };
    let mut tokens = Vec::new();

    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        if cur.rest().starts_with("//") {
            while let Some(c) = cur.peek() {
                if c == '\n' {
                    break;
                }
                cur.bump();
            }
            continue;
        }
        if cur.rest().starts_with("/*") {
            let (line, column) = (cur.line, cur.column);
            cur.bump();
            cur.bump();
            loop {
                if cur.rest().starts_with("*/") {
                    cur.bump();
                    cur.bump();
                    break;
                }
                if cur.bump().is_none() {
                    return Err(LexError::UnterminatedComment { line, column });
                }
            }
            continue;
        }

        let (start, line, column) = (cur.pos, cur.line, cur.column);
        let kind = if c == '"' {
            lex_quoted(&mut cur, '"').map_err(|_| LexError::UnterminatedString { line, column })?;
            TokenKind::StringLiteral
        } else if c == '\'' {
            lex_quoted(&mut cur, '\'').map_err(|_| LexError::UnterminatedChar { line, column })?;
            TokenKind::CharLiteral
        } else if c.is_ascii_digit() || (c == '.' && cur.peek_nth(1).is_some_and(|d| d.is_ascii_digit())) {
            lex_number(&mut cur);
            TokenKind::NumericLiteral
        } else if is_ident_start(c) {
            while cur.peek().is_some_and(is_ident_part) {
                cur.bump();
            }
            if is_keyword(&source[start..cur.pos]) {
                TokenKind::Keyword
            } else {
                TokenKind::Identifier
            }
        } else if let Some(p) = PUNCTUATORS.iter().find(|p| cur.rest().starts_with(**p)) {
            for _ in 0..p.len() {
                cur.bump();
            }
            TokenKind::Punctuator
        } else if let Some(op) = OPERATORS.iter().find(|op| cur.rest().starts_with(**op)) {
            for _ in 0..op.len() {
                cur.bump();
            }
            TokenKind::Operator
        } else {
            // Stray characters (`#`, backtick, ...) reach the parser as
            // single-character operators so it can recover around them.
            cur.bump();
            TokenKind::Operator
        };

        tokens.push(Token { kind, lexeme: source[start..cur.pos].to_string(), line, column, offset: start });
    }

    Ok(tokens)
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_' || c == '$'
}

fn is_ident_part(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '$'
}

/// Consumes a quoted literal including both delimiters. Literals may not span lines.
fn lex_quoted(cur: &mut Cursor<'_>, quote: char) -> Result<(), ()> {
    cur.bump();
    loop {
        match cur.peek() {
            None | Some('\n') | Some('\r') => return Err(()),
            Some('\\') => {
                cur.bump();
                match cur.peek() {
                    None | Some('\n') | Some('\r') => return Err(()),
                    Some(_) => {
                        cur.bump();
                    }
                }
            }
            Some(c) if c == quote => {
                cur.bump();
                return Ok(());
            }
            Some(_) => {
                cur.bump();
            }
        }
    }
}

fn lex_number(cur: &mut Cursor<'_>) {
    let hex = cur.rest().starts_with("0x") || cur.rest().starts_with("0X");
    let mut seen_dot = false;
    let mut prev = '\0';
    while let Some(c) = cur.peek() {
        let take = if c.is_ascii_alphanumeric() || c == '_' {
            true
        } else if c == '.' && !seen_dot && !hex {
            seen_dot = true;
            !cur.peek_nth(1).is_some_and(is_ident_start)
        } else {
            (c == '+' || c == '-') && !hex && matches!(prev, 'e' | 'E')
        };
        if !take {
            break;
        }
        prev = c;
        cur.bump();
    }
}
