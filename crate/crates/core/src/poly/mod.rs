//! Sparse multivariate polynomials over a [`FieldSpec`].
//!
//! Terms are stored sorted descending in the polynomial's term ordering, so
//! the leading term is always `terms[0]`. Variable precedence follows the
//! declaration order of the ambient ring: the first variable is the largest.

mod parse;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::{Embedding, FieldElement, FieldError, FieldSpec};

pub use parse::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("the zero polynomial has no degree form")]
    ZeroDegreeForm,
    #[error("polynomials live in different rings")]
    AmbientMismatch,
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// A power product `x_1^e_1 ... x_n^e_n` with cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars], degree: 0 }
    }

    pub fn new(exps: Vec<u32>) -> Self {
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, degree: 1 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Does `self` divide `other`?
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        Some(Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        })
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// `Some(i)` when this is a positive power of the single variable `x_i`.
    pub fn pure_power_of(&self) -> Option<usize> {
        let mut found = None;
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    pub fn format(&self, vars: &[String]) -> String {
        if self.is_one() {
            return "1".into();
        }
        self.exps
            .iter()
            .zip(vars)
            .filter(|(e, _)| **e > 0)
            .map(|(e, v)| if *e == 1 { v.clone() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// Term orderings. `Elimination { tail }` compares the last `tail` variables
/// first (by DegRevLex on that block) and breaks ties by DegRevLex on the
/// remaining ones; it eliminates the tail block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum TermOrdering {
    #[default]
    DegRevLex,
    Lex,
    Elimination {
        tail: usize,
    },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                // a larger exponent in the last differing variable makes the
                // monomial smaller
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

impl TermOrdering {
    pub fn compare(&self, s: &Monomial, t: &Monomial) -> Ordering {
        match self {
            TermOrdering::Lex => s.exps.cmp(&t.exps),
            TermOrdering::DegRevLex => match s.degree.cmp(&t.degree) {
                Ordering::Equal => degrevlex(&s.exps, &t.exps),
                o => o,
            },
            TermOrdering::Elimination { tail } => {
                let split = s.exps.len() - tail;
                degrevlex(&s.exps[split..], &t.exps[split..])
                    .then_with(|| degrevlex(&s.exps[..split], &t.exps[..split]))
            }
        }
    }

    /// Whether `deg(s) < deg(t)` always implies `s < t`.
    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, TermOrdering::DegRevLex)
    }

    pub fn name(&self) -> String {
        match self {
            TermOrdering::DegRevLex => "DegRevLex".into(),
            TermOrdering::Lex => "Lex".into(),
            TermOrdering::Elimination { tail } => format!("Elim({tail})"),
        }
    }
}

/// Variable names plus coefficient field; shared between polynomials.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct Ambient {
    vars: Vec<String>,
    field: FieldSpec,
}

impl Ambient {
    pub fn new(vars: Vec<String>, field: FieldSpec) -> Arc<Self> {
        Arc::new(Ambient { vars, field })
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// The same variables over a different field.
    pub fn with_field(&self, field: FieldSpec) -> Arc<Ambient> {
        Ambient::new(self.vars.clone(), field)
    }

    /// The same field with extra variables appended at the lowest precedence.
    pub fn with_extra_vars(&self, extra: &[&str]) -> Arc<Ambient> {
        let mut vars = self.vars.clone();
        vars.extend(extra.iter().map(|s| s.to_string()));
        Ambient::new(vars, self.field.clone())
    }
}

#[derive(Clone)]
pub struct Polynomial {
    ambient: Arc<Ambient>,
    ordering: TermOrdering,
    terms: Vec<(Monomial, FieldElement)>,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        if *self.ambient != *other.ambient {
            return false;
        }
        if self.ordering == other.ordering {
            self.terms == other.terms
        } else {
            self.terms == other.with_ordering(self.ordering).terms
        }
    }
}

impl Eq for Polynomial {}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

impl Polynomial {
    pub fn zero(ambient: &Arc<Ambient>, ordering: TermOrdering) -> Self {
        Polynomial { ambient: ambient.clone(), ordering, terms: Vec::new() }
    }

    pub fn constant(ambient: &Arc<Ambient>, ordering: TermOrdering, c: FieldElement) -> Self {
        Self::term(ambient, ordering, Monomial::one(ambient.nvars()), c)
    }

    pub fn one(ambient: &Arc<Ambient>, ordering: TermOrdering) -> Self {
        Self::constant(ambient, ordering, ambient.field.one())
    }

    pub fn var(ambient: &Arc<Ambient>, ordering: TermOrdering, i: usize) -> Self {
        Self::monomial(ambient, ordering, Monomial::var(ambient.nvars(), i))
    }

    pub fn monomial(ambient: &Arc<Ambient>, ordering: TermOrdering, m: Monomial) -> Self {
        Self::term(ambient, ordering, m, ambient.field.one())
    }

    pub fn term(
        ambient: &Arc<Ambient>,
        ordering: TermOrdering,
        m: Monomial,
        c: FieldElement,
    ) -> Self {
        let terms = if ambient.field.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Polynomial { ambient: ambient.clone(), ordering, terms }
    }

    /// Builds a polynomial from arbitrary (possibly repeated or zero) terms.
    pub fn from_terms(
        ambient: &Arc<Ambient>,
        ordering: TermOrdering,
        terms: impl IntoIterator<Item = (Monomial, FieldElement)>,
    ) -> Self {
        let field = &ambient.field;
        let mut acc: HashMap<Monomial, FieldElement> = HashMap::new();
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(v) => *v = field.add(v, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_by(|a, b| ordering.compare(&b.0, &a.0));
        Polynomial { ambient: ambient.clone(), ordering, terms }
    }

    /// Trusts that `terms` are nonzero and strictly descending in `ordering`.
    pub(crate) fn from_sorted_terms(
        ambient: &Arc<Ambient>,
        ordering: TermOrdering,
        terms: Vec<(Monomial, FieldElement)>,
    ) -> Self {
        debug_assert!(terms.windows(2).all(|w| ordering.compare(&w[0].0, &w[1].0) == Ordering::Greater));
        Polynomial { ambient: ambient.clone(), ordering, terms }
    }

    /// Parses the input language, see [`parse`](self::Polynomial::parse).
    ///
    /// ```
    /// use cbp_core::field::FieldSpec;
    /// use cbp_core::poly::{Ambient, Polynomial, TermOrdering};
    /// let ring = Ambient::new(vec!["x".into(), "y".into()], FieldSpec::rationals());
    /// let f = Polynomial::parse("y^2 - 17/9*y^2", &ring, TermOrdering::DegRevLex).unwrap();
    /// assert_eq!(f.to_string(), "-8/9*y^2");
    /// ```
    pub fn parse(
        text: &str,
        ambient: &Arc<Ambient>,
        ordering: TermOrdering,
    ) -> Result<Self, ParseError> {
        parse::parse_polynomial(text, ambient, ordering)
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn field(&self) -> &FieldSpec {
        &self.ambient.field
    }

    pub fn ordering(&self) -> TermOrdering {
        self.ordering
    }

    pub fn terms(&self) -> &[(Monomial, FieldElement)] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &FieldElement)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn coefficient(&self, m: &Monomial) -> FieldElement {
        self.terms
            .iter()
            .find(|(t, _)| t == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Everything but the leading term.
    pub fn tail(&self) -> Polynomial {
        Polynomial {
            ambient: self.ambient.clone(),
            ordering: self.ordering,
            terms: self.terms.iter().skip(1).cloned().collect(),
        }
    }

    pub fn with_ordering(&self, ordering: TermOrdering) -> Polynomial {
        let mut terms = self.terms.clone();
        if ordering != self.ordering {
            terms.sort_by(|a, b| ordering.compare(&b.0, &a.0));
        }
        Polynomial { ambient: self.ambient.clone(), ordering, terms }
    }

    fn zero_like(&self) -> Polynomial {
        Polynomial { ambient: self.ambient.clone(), ordering: self.ordering, terms: Vec::new() }
    }

    fn aligned<'a>(&self, other: &'a Polynomial) -> std::borrow::Cow<'a, Polynomial> {
        debug_assert_eq!(*self.ambient, *other.ambient, "ambient mismatch");
        if other.ordering == self.ordering {
            std::borrow::Cow::Borrowed(other)
        } else {
            std::borrow::Cow::Owned(other.with_ordering(self.ordering))
        }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Polynomial, c: &FieldElement, m: &Monomial) -> Polynomial {
        let other = self.aligned(other);
        let field = &self.ambient.field;
        if field.is_zero(c) {
            return self.clone();
        }
        let ord = self.ordering;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, d)| (t.mul(m), field.mul(d, c))).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some((ma, _)), Some((mb, _))) => match ord.compare(ma, mb) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (ma, ca) = a.next().unwrap();
                        let (_, cb) = b.next().unwrap();
                        let s = field.add(ca, &cb);
                        if !field.is_zero(&s) {
                            out.push((ma.clone(), s));
                        }
                    }
                },
            }
        }
        Polynomial { ambient: self.ambient.clone(), ordering: ord, terms: out }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.add_scaled(other, &self.field().one(), &Monomial::one(self.ambient.nvars()))
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let minus_one = self.field().neg(&self.field().one());
        self.add_scaled(other, &minus_one, &Monomial::one(self.ambient.nvars()))
    }

    pub fn neg(&self) -> Polynomial {
        let field = self.field();
        Polynomial {
            ambient: self.ambient.clone(),
            ordering: self.ordering,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        let field = self.field();
        if field.is_zero(c) {
            return self.zero_like();
        }
        Polynomial {
            ambient: self.ambient.clone(),
            ordering: self.ordering,
            terms: self.terms.iter().map(|(m, d)| (m.clone(), field.mul(d, c))).collect(),
        }
    }

    /// Multiplication by a monomial preserves the term order.
    pub fn mul_monomial(&self, m: &Monomial) -> Polynomial {
        Polynomial {
            ambient: self.ambient.clone(),
            ordering: self.ordering,
            terms: self.terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let other = self.aligned(other);
        if self.is_zero() || other.is_zero() {
            return self.zero_like();
        }
        let field = self.field();
        let products = self
            .terms
            .iter()
            .flat_map(|(m, c)| other.terms.iter().map(move |(n, d)| (m.mul(n), field.mul(c, d))));
        Polynomial::from_terms(&self.ambient, self.ordering, products)
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ambient, self.ordering);
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }

    /// Scales so that the leading coefficient is one.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).expect("leading coefficient is nonzero")),
        }
    }

    /// The homogeneous component of top total degree.
    pub fn degree_form(&self) -> Result<Polynomial, PolyError> {
        let d = self.degree().ok_or(PolyError::ZeroDegreeForm)?;
        Ok(Polynomial {
            ambient: self.ambient.clone(),
            ordering: self.ordering,
            terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect(),
        })
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.iter().map(|(m, _)| m.degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// Exact quotient `self / divisor`, `None` if the division leaves a
    /// remainder.
    pub fn div_exact(&self, divisor: &Polynomial) -> Option<Polynomial> {
        let divisor = self.aligned(divisor);
        let (lm, lc) = divisor.leading_term()?;
        let field = self.field();
        let lc_inv = field.inv(lc).ok()?;
        let mut rest = self.clone();
        let mut quotient = Vec::new();
        while let Some((m, c)) = rest.leading_term() {
            let q = lm.quotient_of(m)?;
            let coeff = field.mul(c, &lc_inv);
            rest = rest.add_scaled(&divisor, &field.neg(&coeff), &q);
            quotient.push((q, coeff));
        }
        // quotient terms come out in descending order
        Some(Polynomial { ambient: self.ambient.clone(), ordering: self.ordering, terms: quotient })
    }

    /// Maps into a ring with the same variables over another field.
    pub fn map_field(&self, target: &Arc<Ambient>, emb: &Embedding) -> Polynomial {
        Polynomial::from_terms(
            target,
            self.ordering,
            self.terms.iter().map(|(m, c)| (m.clone(), emb.apply(c))),
        )
    }

    /// Re-embeds into `target`, which has `self`'s variables as a prefix.
    pub fn extend_vars(&self, target: &Arc<Ambient>, ordering: TermOrdering) -> Polynomial {
        let n = target.nvars();
        Polynomial::from_terms(
            target,
            ordering,
            self.terms.iter().map(|(m, c)| {
                let mut e = m.exps.clone();
                e.resize(n, 0);
                (Monomial::new(e), c.clone())
            }),
        )
    }

    /// Drops trailing variables; every term must have zero exponent there.
    pub fn truncate_vars(&self, target: &Arc<Ambient>, ordering: TermOrdering) -> Option<Polynomial> {
        let n = target.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exps[n..].iter().any(|&e| e > 0) {
                return None;
            }
            terms.push((Monomial::new(m.exps[..n].to_vec()), c.clone()));
        }
        Some(Polynomial::from_terms(target, ordering, terms))
    }

    /// Evaluates at a point whose coordinates live in `emb.target()`.
    pub fn evaluate(&self, point: &[FieldElement], emb: &Embedding) -> FieldElement {
        let f = emb.target();
        let mut acc = f.zero();
        for (m, c) in &self.terms {
            let mut t = emb.apply(c);
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = f.mul(&t, &f.pow(x, e as u64));
                }
            }
            acc = f.add(&acc, &t);
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        let vars = self.ambient.vars();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.is_negative(c);
            let abs = if negative { field.neg(c) } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let coeff = field.format(&abs);
            let coeff = if field.is_atomic(&abs) { coeff } else { format!("({coeff})") };
            if m.is_one() {
                write!(f, "{coeff}")?;
            } else if field.is_one(&abs) {
                write!(f, "{}", m.format(vars))?;
            } else {
                write!(f, "{coeff}*{}", m.format(vars))?;
            }
        }
        Ok(())
    }
}
