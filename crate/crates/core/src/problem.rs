//! The problem-file format.
//!
//! ```text
//! field: Q                 # or GF(p), GF(p^k), GF(p^k; a^2 + a + 1)
//! vars: x, y
//! order: DegRevLex         # optional; DegRevLex or Lex
//! ideal:
//!   x*y, y^3
//!   x^4 + x^2
//! component:               # optional, repeatable
//!   Q: x*y, x^2, y^3
//!   M: x, y
//! ```
//!
//! `#` starts a comment. Generators are separated by commas or newlines; a
//! line ending in an operator or an open parenthesis continues on the next.

use std::sync::Arc;

use thiserror::Error;

use crate::field::{FieldError, FieldSpec};
use crate::ideal::{IdealError, IdealHandle};
use crate::poly::{Ambient, ParseError, Polynomial, TermOrdering};
use crate::separator::{Component, DecompositionInput, SeparatorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Polynomial(ParseError),
    #[error("line {line}: {source}")]
    Field { line: usize, source: FieldError },
    #[error(transparent)]
    Decomposition(#[from] SeparatorError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

#[derive(Debug, Clone)]
pub struct Problem {
    pub ambient: Arc<Ambient>,
    pub ordering: TermOrdering,
    pub ideal: IdealHandle,
    /// The raw component list, before validation.
    pub components: Vec<Component>,
}

impl Problem {
    pub fn field(&self) -> &FieldSpec {
        self.ambient.field()
    }

    pub fn has_decomposition(&self) -> bool {
        !self.components.is_empty()
    }

    pub fn decomposition(&self) -> Result<Option<DecompositionInput>, ProblemError> {
        if self.components.is_empty() {
            return Ok(None);
        }
        Ok(Some(DecompositionInput::validate(&self.ideal, self.components.clone())?))
    }
}

fn syntax(line: usize, message: impl Into<String>) -> ProblemError {
    ProblemError::Syntax { line, message: message.into() }
}

/// Parses `Q`, `GF(p)`, `GF(p^k)` or `GF(p^k; modulus in a)`.
pub fn parse_field(text: &str) -> Result<FieldSpec, FieldError> {
    let t = text.trim();
    if t == "Q" || t == "QQ" {
        return Ok(FieldSpec::rationals());
    }
    let bad = || FieldError::InvalidField(format!("cannot read field `{t}`"));
    let inner = t.strip_prefix("GF(").and_then(|s| s.strip_suffix(')')).ok_or_else(bad)?;
    let (size, modulus) = match inner.split_once(';') {
        Some((s, m)) => (s.trim(), Some(m.trim())),
        None => (inner.trim(), None),
    };
    let (p, k) = match size.split_once('^') {
        Some((p, k)) => (p.trim().parse::<u64>().map_err(|_| bad())?, k.trim().parse::<usize>().map_err(|_| bad())?),
        None => (size.parse::<u64>().map_err(|_| bad())?, 1),
    };
    match modulus {
        None if k == 1 => FieldSpec::prime(p),
        None => FieldSpec::extension(p, k),
        Some(m) => {
            let prime = FieldSpec::prime(p)?;
            let ring = Ambient::new(vec!["a".into()], prime);
            let poly = Polynomial::parse(m, &ring, TermOrdering::DegRevLex)
                .map_err(|e| FieldError::InvalidField(format!("modulus: {e}")))?;
            let deg = poly.degree().unwrap_or(0) as usize;
            if deg != k {
                return Err(FieldError::InvalidField(format!("modulus has degree {deg}, expected {k}")));
            }
            let mut coeffs = vec![0u64; deg + 1];
            for (mono, c) in poly.terms() {
                coeffs[mono.degree() as usize] = match c {
                    crate::field::FieldElement::Prime(v) => *v,
                    _ => unreachable!("prime field coefficients"),
                };
            }
            FieldSpec::extension_with_modulus(p, coeffs)
        }
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Section {
    None,
    Ideal,
    Component,
}

/// A generator's text with the position of its first character.
struct Item {
    text: String,
    line: usize,
    col: usize,
}

/// Splits at top-level commas, remembering columns.
fn split_items(text: &str, line: usize, col0: usize, out: &mut Vec<Item>) {
    let mut depth = 0i32;
    let mut start = 0;
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let push = |from: usize, to: usize, out: &mut Vec<Item>| {
        let piece = &text[from..to];
        let lead = piece.len() - piece.trim_start().len();
        if !piece.trim().is_empty() {
            let col = col0 + text[..from + lead].chars().count();
            out.push(Item { text: piece.trim().to_string(), line, col });
        }
    };
    for &(i, c) in &bytes {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                push(start, i, out);
                start = i + 1;
            }
            _ => {}
        }
    }
    push(start, text.len(), out);
}

fn continues(text: &str) -> bool {
    let t = text.trim_end();
    t.ends_with(['+', '-', '*', '/', '^', '(', ','])
}

fn parse_items(items: &[Item], ambient: &Arc<Ambient>) -> Result<Vec<Polynomial>, ProblemError> {
    items
        .iter()
        .map(|it| {
            Polynomial::parse(&it.text, ambient, TermOrdering::DegRevLex).map_err(|mut e| {
                if e.line == 1 {
                    e.col += it.col - 1;
                }
                e.line += it.line - 1;
                ProblemError::Polynomial(e)
            })
        })
        .collect()
}

pub fn parse_problem(text: &str) -> Result<Problem, ProblemError> {
    let mut field: Option<FieldSpec> = None;
    let mut vars: Option<Vec<String>> = None;
    let mut ordering = TermOrdering::DegRevLex;
    let mut ideal_items: Vec<Item> = Vec::new();
    let mut comps: Vec<(Vec<Item>, Vec<Item>, usize)> = Vec::new();
    let mut section = Section::None;
    // which list a continued line appends to: 0 ideal, 1 Q, 2 M
    let mut pending: Option<(u8, Item)> = None;

    let lines: Vec<&str> = text.lines().collect();
    for (n, raw) in lines.iter().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        if let Some((target, mut item)) = pending.take() {
            item.text.push(' ');
            item.text.push_str(content.trim());
            if continues(content) {
                pending = Some((target, item));
            } else {
                let list = match target {
                    0 => &mut ideal_items,
                    1 => &mut comps.last_mut().unwrap().0,
                    _ => &mut comps.last_mut().unwrap().1,
                };
                // the joined text may hold several comma-separated generators
                split_items(&item.text, item.line, item.col, list);
            }
            continue;
        }
        let indent = content.len() - content.trim_start().len();
        let trimmed = content.trim();
        let (key, rest) = match trimmed.split_once(':') {
            Some((k, r)) if k.trim().chars().all(|c| c.is_alphanumeric() || c == '_') => (Some(k.trim()), r),
            _ => (None, trimmed),
        };
        let rest_col = indent + trimmed.len() - rest.len() + 1;
        let mut add_items = |target: u8, text: &str, col: usize, ideal_items: &mut Vec<Item>, comps: &mut Vec<(Vec<Item>, Vec<Item>, usize)>| {
            if text.trim().is_empty() {
                return;
            }
            if continues(text) {
                let lead = text.len() - text.trim_start().len();
                pending = Some((target, Item { text: text.trim().to_string(), line, col: col + lead }));
                return;
            }
            let list = match target {
                0 => ideal_items,
                1 => &mut comps.last_mut().unwrap().0,
                _ => &mut comps.last_mut().unwrap().1,
            };
            split_items(text, line, col, list);
        };
        match (key, section) {
            (Some("field"), _) => {
                field = Some(parse_field(rest).map_err(|source| ProblemError::Field { line, source })?);
                section = Section::None;
            }
            (Some("vars"), _) => {
                let names: Vec<String> = rest.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect();
                if names.is_empty() {
                    return Err(syntax(line, "no variables declared"));
                }
                for (i, v) in names.iter().enumerate() {
                    if !v.chars().next().is_some_and(|c| c.is_alphabetic() || c == '_')
                        || !v.chars().all(|c| c.is_alphanumeric() || c == '_')
                    {
                        return Err(syntax(line, format!("`{v}` is not a variable name")));
                    }
                    if names[..i].contains(v) {
                        return Err(syntax(line, format!("variable `{v}` declared twice")));
                    }
                }
                vars = Some(names);
                section = Section::None;
            }
            (Some("order"), _) => {
                ordering = match rest.trim() {
                    "DegRevLex" | "degrevlex" | "drl" => TermOrdering::DegRevLex,
                    "Lex" | "lex" => TermOrdering::Lex,
                    other => return Err(syntax(line, format!("unknown ordering `{other}`"))),
                };
                section = Section::None;
            }
            (Some("ideal"), _) => {
                section = Section::Ideal;
                add_items(0, rest, rest_col, &mut ideal_items, &mut comps);
            }
            (Some("component"), _) => {
                section = Section::Component;
                comps.push((Vec::new(), Vec::new(), line));
                if !rest.trim().is_empty() {
                    return Err(syntax(line, "`component:` takes its ideals on `Q:` and `M:` lines"));
                }
            }
            (Some("Q"), Section::Component) => add_items(1, rest, rest_col, &mut ideal_items, &mut comps),
            (Some("M"), Section::Component) => add_items(2, rest, rest_col, &mut ideal_items, &mut comps),
            (None, Section::Ideal) => add_items(0, rest, rest_col, &mut ideal_items, &mut comps),
            (Some(k), _) => return Err(syntax(line, format!("unexpected key `{k}`"))),
            (None, _) => return Err(syntax(line, "text outside of a section")),
        }
    }
    if pending.is_some() {
        return Err(syntax(lines.len(), "input ends in the middle of a generator"));
    }

    let field = field.ok_or_else(|| syntax(1, "missing `field:` line"))?;
    let vars = vars.ok_or_else(|| syntax(1, "missing `vars:` line"))?;
    let ambient = Ambient::new(vars, field);
    if ideal_items.is_empty() {
        return Err(syntax(lines.len(), "the ideal has no generators"));
    }
    let ideal = IdealHandle::new(&ambient, parse_items(&ideal_items, &ambient)?);
    let mut components = Vec::new();
    for (q, m, line) in comps {
        if q.is_empty() || m.is_empty() {
            return Err(syntax(line, "a component needs both `Q:` and `M:` generators"));
        }
        components.push(Component {
            primary: IdealHandle::new(&ambient, parse_items(&q, &ambient)?),
            maximal: IdealHandle::new(&ambient, parse_items(&m, &ambient)?),
        });
    }
    Ok(Problem { ambient, ordering, ideal, components })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::ParseErrorKind;

    #[test]
    fn fields() {
        assert_eq!(parse_field("Q").unwrap(), FieldSpec::rationals());
        assert_eq!(parse_field("GF(7)").unwrap(), FieldSpec::prime(7).unwrap());
        assert_eq!(parse_field("GF(2^2)").unwrap(), FieldSpec::extension(2, 2).unwrap());
        assert_eq!(parse_field("GF(3^2; a^2 + 1)").unwrap(), FieldSpec::extension(3, 2).unwrap());
        assert!(parse_field("GF(2^2; a^2 + 1)").is_err());
        assert!(parse_field("GF(6)").is_err());
        assert!(parse_field("R").is_err());
    }

    #[test]
    fn full_file() {
        let text = "\
# two sources
field: Q
vars: x, y
order: Lex
ideal:
  x*y, y^3
  x^4 +
    x^2
component:
  Q: y, x^2 + 1
  M: y, x^2 + 1
component:
  Q: x*y, x^2, y^3   # primary
  M: x, y
";
        let p = parse_problem(text).unwrap();
        assert_eq!(p.ambient.vars(), ["x", "y"]);
        assert_eq!(p.ordering, TermOrdering::Lex);
        let gens: Vec<String> = p.ideal.gens().iter().map(|g| g.to_string()).collect();
        assert_eq!(gens, ["x*y", "y^3", "x^4 + x^2"]);
        assert_eq!(p.components.len(), 2);
        assert_eq!(p.decomposition().unwrap().unwrap().len(), 2);
    }

    #[test]
    fn error_locations() {
        let e = parse_problem("field: Q\nvars: x, y\nideal:\n  x*y, y^3 + w\n").unwrap_err();
        match e {
            ProblemError::Polynomial(pe) => {
                assert_eq!((pe.line, pe.col), (4, 14));
                assert_eq!(pe.kind, ParseErrorKind::UnknownVariable("w".into()));
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_problem("field: Q\nideal: x\n"), Err(ProblemError::Syntax { .. })));
        assert!(matches!(parse_problem("field: GF(4)\nvars: x\nideal: x\n"), Err(ProblemError::Field { line: 1, .. })));
        assert!(matches!(parse_problem("field: Q\nvars: x\nideal: x +\n"), Err(ProblemError::Syntax { .. })));
        assert!(matches!(parse_problem("field: Q\nvars: x, x\nideal: x\n"), Err(ProblemError::Syntax { line: 2, .. })));
    }

    #[test]
    fn bad_decomposition_is_reported() {
        let text = "field: Q\nvars: x\nideal: x^2 - 1\ncomponent:\n  Q: x - 1\n  M: x - 1\n";
        let p = parse_problem(text).unwrap();
        assert!(matches!(p.decomposition(), Err(ProblemError::Decomposition(_))));
    }
}
