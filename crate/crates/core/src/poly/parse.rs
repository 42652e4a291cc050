//! Recursive-descent parser for the polynomial input language.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := power (['*'|'/'] power)*        // '*' may be omitted
//! power  := atom ['^' integer]
//! atom   := integer | identifier | '(' expr ')'
//! ```
//!
//! Division is only allowed by nonzero constants. Inside an extension field
//! `GF(p^k)` the identifier `a` denotes the generator unless a variable of
//! that name is declared.

use std::sync::Arc;

use num_bigint::{BigInt, Sign};
use thiserror::Error;

use super::{Ambient, Polynomial, TermOrdering};
use crate::field::FieldSpec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unexpected {found}, expected {expected}")]
    Syntax { found: String, expected: &'static str },
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("coefficient {0} is not in {1}")]
    NotInField(String, String),
    #[error("division by a non-constant or zero expression")]
    BadDivision,
    #[error("exponent {0} is too large")]
    ExponentTooLarge(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt, String),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Int(_, s) => format!("number `{s}`"),
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Slash => "`/`".into(),
            Tok::Caret => "`^`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::End => "end of input".into(),
        }
    }

    fn starts_atom(&self) -> bool {
        matches!(self, Tok::Int(..) | Tok::Ident(_) | Tok::LParen)
    }
}

struct Lexed {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut line, mut col) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Int(s.parse().expect("digits"), s)
        } else if c.is_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' | '\u{2212}' => Tok::Minus,
                '*' | '\u{00b7}' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => {
                    return Err(ParseError {
                        line: l0,
                        col: c0,
                        kind: ParseErrorKind::Syntax {
                            found: format!("character `{other}`"),
                            expected: "a term",
                        },
                    })
                }
            }
        };
        col += i - start;
        out.push(Lexed { tok, line: l0, col: c0 });
    }
    out.push(Lexed { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Lexed>,
    pos: usize,
    ambient: &'a Arc<Ambient>,
    ordering: TermOrdering,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, kind }
    }

    fn unexpected(&self, expected: &'static str) -> ParseError {
        self.error_here(ParseErrorKind::Syntax { found: self.peek().describe(), expected })
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = Polynomial::zero(self.ambient, self.ordering);
        let mut negate = false;
        match self.peek() {
            Tok::Plus => self.pos += 1,
            Tok::Minus => {
                negate = true;
                self.pos += 1;
            }
            _ => {}
        }
        loop {
            let t = self.term()?;
            acc = if negate { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Tok::Star => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Tok::Slash => {
                    self.pos += 1;
                    let at = self.pos;
                    let d = self.power()?;
                    let field = self.ambient.field();
                    let literal = match &self.toks[at].tok {
                        Tok::Int(n, s) if self.pos == at + 1 && n.sign() != Sign::NoSign => {
                            Some(s.clone())
                        }
                        _ => None,
                    };
                    let inv = match d.terms() {
                        [(m, c)] if m.is_one() => field.inv(c).ok(),
                        _ => None,
                    };
                    let Some(inv) = inv else {
                        self.pos = at;
                        let kind = match literal {
                            Some(s) => ParseErrorKind::NotInField(format!("1/{s}"), field.to_string()),
                            None => ParseErrorKind::BadDivision,
                        };
                        return Err(self.error_here(kind));
                    };
                    acc = acc.scale(&inv);
                }
                t if t.starts_atom() => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Polynomial, ParseError> {
        let base = self.atom()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.pos += 1;
        match self.peek().clone() {
            Tok::Int(_, s) => {
                let e: u32 = s
                    .parse()
                    .ok()
                    .filter(|&e| e <= 10_000)
                    .ok_or_else(|| self.error_here(ParseErrorKind::ExponentTooLarge(s.clone())))?;
                self.pos += 1;
                Ok(base.pow(e))
            }
            _ => Err(self.unexpected("an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        let field = self.ambient.field();
        match self.peek().clone() {
            Tok::Int(n, _) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.ambient, self.ordering, field.from_bigint(&n)))
            }
            Tok::Ident(name) => {
                if let Some(i) = self.ambient.var_index(&name) {
                    self.pos += 1;
                    return Ok(Polynomial::var(self.ambient, self.ordering, i));
                }
                if name == "a" {
                    return match (field, field.generator()) {
                        (FieldSpec::Extension(_), Some(g)) => {
                            self.pos += 1;
                            Ok(Polynomial::constant(self.ambient, self.ordering, g))
                        }
                        _ => Err(self.error_here(ParseErrorKind::NotInField(
                            name.clone(),
                            field.to_string(),
                        ))),
                    };
                }
                Err(self.error_here(ParseErrorKind::UnknownVariable(name)))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.expr()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.unexpected("`)`"));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.unexpected("a term")),
        }
    }
}

pub(super) fn parse_polynomial(
    text: &str,
    ambient: &Arc<Ambient>,
    ordering: TermOrdering,
) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, ambient, ordering };
    let f = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("`+`, `-` or end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qxy() -> Arc<Ambient> {
        Ambient::new(vec!["x".into(), "y".into()], FieldSpec::rationals())
    }

    #[test]
    fn four_terms() {
        let f = Polynomial::parse("x^2*y - 4*x^2 - x*y + 4*x", &qxy(), TermOrdering::DegRevLex).unwrap();
        assert_eq!(f.len(), 4);
        assert_eq!(f.to_string(), "x^2*y - 4*x^2 - x*y + 4*x");
    }

    #[test]
    fn zero_and_implicit_products() {
        let r = qxy();
        assert!(Polynomial::parse("0", &r, TermOrdering::DegRevLex).unwrap().is_zero());
        let a = Polynomial::parse("3x y^2 - (x + 1)(x - 1)", &r, TermOrdering::DegRevLex).unwrap();
        let b = Polynomial::parse("3*x*y^2 - x^2 + 1", &r, TermOrdering::DegRevLex).unwrap();
        assert_eq!(a, b);
        let c = Polynomial::parse("-170/3*y*z", &Ambient::new(vec!["y".into(), "z".into()], FieldSpec::rationals()), TermOrdering::DegRevLex).unwrap();
        assert_eq!(c.to_string(), "-170/3*y*z");
    }

    #[test]
    fn errors_carry_location() {
        let r = qxy();
        let e = Polynomial::parse("x +\n  2*w", &r, TermOrdering::DegRevLex).unwrap_err();
        assert_eq!((e.line, e.col), (2, 5));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("w".into()));
        let e = Polynomial::parse("x + * y", &r, TermOrdering::DegRevLex).unwrap_err();
        assert_eq!((e.line, e.col), (1, 5));
        let e = Polynomial::parse("(x + y", &r, TermOrdering::DegRevLex).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax { .. }));
        let e = Polynomial::parse("x / y", &r, TermOrdering::DegRevLex).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::BadDivision);
        let e = Polynomial::parse("a*x", &r, TermOrdering::DegRevLex).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NotInField(..)));
    }

    #[test]
    fn coefficient_not_in_field() {
        let r = Ambient::new(vec!["x".into()], FieldSpec::prime(3).unwrap());
        let e = Polynomial::parse("x + 1/3", &r, TermOrdering::DegRevLex).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::NotInField(..)));
        let f = Polynomial::parse("x + 1/2", &r, TermOrdering::DegRevLex).unwrap();
        assert_eq!(f.to_string(), "x + 2");
    }
}
