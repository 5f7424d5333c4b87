use std::fmt;

use num_bigint::BigInt;

use super::ast::{Pos, Span};
use super::DslError;
use crate::arith::Rational;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Int(BigInt),
    Rat(Rational),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Comma,
    Eq,
    DotDot,
    Colon,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Int(n) => write!(f, "`{n}`"),
            Tok::Rat(r) => write!(f, "`{r}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::DotDot => f.write_str("`..`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub span: Span,
}

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    pos: Pos,
}

impl Cursor<'_> {
    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.pos.line += 1;
            self.pos.col = 1;
        } else {
            self.pos.col += 1;
        }
        Some(c)
    }

    fn digits(&mut self) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek().filter(char::is_ascii_digit) {
            s.push(c);
            self.bump();
        }
        s
    }
}

/// Splits `text` into tokens; `#` starts a comment running to end of line.
/// Positions start at `first_line`.
pub(crate) fn lex(text: &str, first_line: usize) -> Result<Vec<Token>, DslError> {
    let mut cur = Cursor { chars: text.chars().peekable(), pos: Pos { line: first_line, col: 1 } };
    let mut out = Vec::new();
    loop {
        while let Some(c) = cur.peek() {
            if c == '#' {
                while cur.peek().is_some_and(|c| c != '\n') {
                    cur.bump();
                }
            } else if c.is_whitespace() {
                cur.bump();
            } else {
                break;
            }
        }
        let start = cur.pos;
        let Some(c) = cur.peek() else {
            out.push(Token { tok: Tok::Eof, span: Span { start, end: start } });
            return Ok(out);
        };
        let tok = if c.is_ascii_digit() {
            let num = cur.digits();
            if cur.peek() == Some('/') {
                cur.bump();
                let den = cur.digits();
                if den.is_empty() {
                    return Err(DslError::lexical(cur.pos, "expected digits after `/` in rational literal"));
                }
                let den: BigInt = den.parse().expect("digits");
                if den == BigInt::from(0) {
                    return Err(DslError::lexical(start, "rational literal with zero denominator"));
                }
                Tok::Rat(Rational::new(num.parse().expect("digits"), den))
            } else {
                Tok::Int(num.parse().expect("digits"))
            }
        } else if c.is_alphabetic() || c == '_' {
            let mut s = String::new();
            while let Some(c) = cur.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                s.push(c);
                cur.bump();
            }
            Tok::Ident(s)
        } else {
            cur.bump();
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '=' => Tok::Eq,
                ':' => Tok::Colon,
                '.' if cur.peek() == Some('.') => {
                    cur.bump();
                    Tok::DotDot
                }
                _ => return Err(DslError::lexical(start, &format!("unexpected character `{c}`"))),
            }
        };
        out.push(Token { tok, span: Span { start, end: cur.pos } });
    }
}
