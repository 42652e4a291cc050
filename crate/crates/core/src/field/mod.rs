//! Exact scalar fields: the rationals, prime fields GF(p), and extensions
//! GF(p^k) presented modulo a monic irreducible polynomial in `a`.
//!
//! A [`FieldSpec`] is the arithmetic context. Elements ([`FieldElement`]) are
//! plain payloads; every operation goes through the `FieldSpec`, which knows the
//! characteristic and the modulus. The checked entry point [`FieldSpec::arith`]
//! validates that both operands belong to the field.

mod gfpoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use thiserror::Error;

/// Largest prime accepted for GF(p); keeps products inside `u128` comfortably
/// and trial division fast.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element does not belong to field {0}")]
    SpecMismatch(String),
    #[error("coefficient {0} is not an element of {1}")]
    NotInField(String, String),
    #[error("cannot embed {from} into {to}")]
    NoEmbedding { from: String, to: String },
}

/// The modulus data of GF(p^k).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtensionSpec {
    p: u64,
    /// Monic, low degree first, length k + 1.
    modulus: Vec<u64>,
}

impl ExtensionSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Coefficients of the modulus, constant term first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Extension(Arc<ExtensionSpec>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldElement {
    Rational(BigRational),
    Prime(u64),
    /// Coefficient vector of length k, constant term first.
    Ext(Vec<u64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<(), FieldError> {
    if p >= MAX_PRIME {
        return Err(FieldError::InvalidField(format!("prime {p} is too large")));
    }
    if !is_prime(p) {
        return Err(FieldError::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

impl FieldSpec {
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    pub fn prime(p: u64) -> Result<Self, FieldError> {
        check_prime(p)?;
        Ok(FieldSpec::Prime(p))
    }

    /// GF(p^k) with the smallest monic irreducible modulus of degree k, where
    /// candidates are enumerated by the integer value of their coefficient
    /// vector (constant term least significant).
    ///
    /// ```
    /// use cbp_core::field::FieldSpec;
    /// let gf4 = FieldSpec::extension(2, 2).unwrap();
    /// assert_eq!(gf4.to_string(), "GF(2^2; a^2 + a + 1)");
    /// ```
    pub fn extension(p: u64, k: usize) -> Result<Self, FieldError> {
        check_prime(p)?;
        if k == 0 {
            return Err(FieldError::InvalidField("extension degree must be at least 1".into()));
        }
        let count = (p as u128).checked_pow(k as u32).filter(|&c| c < (1u128 << 40));
        let count = count.ok_or_else(|| {
            FieldError::InvalidField(format!("GF({p}^{k}) is too large for modulus search"))
        })?;
        for n in 0..count {
            let mut modulus = Vec::with_capacity(k + 1);
            let mut rest = n;
            for _ in 0..k {
                modulus.push((rest % p as u128) as u64);
                rest /= p as u128;
            }
            modulus.push(1);
            if gfpoly::is_irreducible(&modulus, p) {
                return Ok(FieldSpec::Extension(Arc::new(ExtensionSpec { p, modulus })));
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// GF(p^k) for an explicit modulus (constant term first, must be monic
    /// and irreducible).
    pub fn extension_with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self, FieldError> {
        check_prime(p)?;
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        gfpoly::trim(&mut modulus);
        if modulus.len() < 2 {
            return Err(FieldError::InvalidField("modulus must have degree at least 1".into()));
        }
        if modulus.last() != Some(&1) {
            return Err(FieldError::InvalidField("modulus must be monic".into()));
        }
        if !gfpoly::is_irreducible(&modulus, p) {
            return Err(FieldError::InvalidField(format!(
                "modulus {} is reducible over GF({p})",
                format_dense(&modulus, "a")
            )));
        }
        Ok(FieldSpec::Extension(Arc::new(ExtensionSpec { p, modulus })))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
            FieldSpec::Extension(e) => e.p,
        }
    }

    /// Number of elements, `None` for the rationals or when it overflows.
    pub fn cardinality(&self) -> Option<u128> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p as u128),
            FieldSpec::Extension(e) => (e.p as u128).checked_pow(e.degree() as u32),
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self, FieldSpec::Rationals)
    }

    /// Degree over the prime field (1 for GF(p), 0 for Q).
    pub fn degree(&self) -> usize {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(_) => 1,
            FieldSpec::Extension(e) => e.degree(),
        }
    }

    pub fn zero(&self) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::zero()),
            FieldSpec::Prime(_) => FieldElement::Prime(0),
            FieldSpec::Extension(e) => FieldElement::Ext(vec![0; e.degree()]),
        }
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.into())),
            FieldSpec::Prime(p) => FieldElement::Prime(n.rem_euclid(*p as i64) as u64),
            FieldSpec::Extension(e) => {
                let mut v = vec![0; e.degree()];
                v[0] = n.rem_euclid(e.p as i64) as u64;
                FieldElement::Ext(v)
            }
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        match self {
            FieldSpec::Rationals => FieldElement::Rational(BigRational::from_integer(n.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let r = n.mod_floor(&p).to_u64().expect("residue fits");
                self.from_i64(r as i64)
            }
        }
    }

    /// The image of `num/den`; fails when `den` vanishes in the field.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<FieldElement, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        match self {
            FieldSpec::Rationals => {
                Ok(FieldElement::Rational(BigRational::new(num.clone(), den.clone())))
            }
            _ => {
                let d = self.from_bigint(den);
                if self.is_zero(&d) {
                    return Err(FieldError::NotInField(format!("{num}/{den}"), self.to_string()));
                }
                self.div(&self.from_bigint(num), &d)
            }
        }
    }

    /// The generator `a` of an extension field.
    pub fn generator(&self) -> Option<FieldElement> {
        match self {
            FieldSpec::Extension(e) => {
                let v = gfpoly::rem(&[0, 1], &e.modulus, e.p);
                Some(FieldElement::Ext(pad(v, e.degree())))
            }
            _ => None,
        }
    }

    pub fn contains(&self, a: &FieldElement) -> bool {
        match (self, a) {
            (FieldSpec::Rationals, FieldElement::Rational(_)) => true,
            (FieldSpec::Prime(p), FieldElement::Prime(v)) => v < p,
            (FieldSpec::Extension(e), FieldElement::Ext(v)) => {
                v.len() == e.degree() && v.iter().all(|&c| c < e.p)
            }
            _ => false,
        }
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_zero(),
            FieldElement::Prime(v) => *v == 0,
            FieldElement::Ext(v) => v.iter().all(|&c| c == 0),
        }
    }

    pub fn is_one(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Rational(r) => r.is_one(),
            FieldElement::Prime(v) => *v == 1,
            FieldElement::Ext(v) => v[0] == 1 && v[1..].iter().all(|&c| c == 0),
        }
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (_, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x + y)
            }
            (FieldSpec::Prime(p), FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime((x + y) % p)
            }
            (FieldSpec::Extension(e), FieldElement::Ext(x), FieldElement::Ext(y)) => {
                FieldElement::Ext(x.iter().zip(y).map(|(u, v)| (u + v) % e.p).collect())
            }
            _ => panic!("field element does not match {self}"),
        }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        match (self, a) {
            (_, FieldElement::Rational(x)) => FieldElement::Rational(-x),
            (FieldSpec::Prime(p), FieldElement::Prime(x)) => FieldElement::Prime((p - x) % p),
            (FieldSpec::Extension(e), FieldElement::Ext(x)) => {
                FieldElement::Ext(x.iter().map(|u| (e.p - u) % e.p).collect())
            }
            _ => panic!("field element does not match {self}"),
        }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (_, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x - y)
            }
            (FieldSpec::Prime(p), FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime((x + p - y) % p)
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        match (self, a, b) {
            (_, FieldElement::Rational(x), FieldElement::Rational(y)) => {
                FieldElement::Rational(x * y)
            }
            (FieldSpec::Prime(p), FieldElement::Prime(x), FieldElement::Prime(y)) => {
                FieldElement::Prime(gfpoly::mul_mod_p(*x, *y, *p))
            }
            (FieldSpec::Extension(e), FieldElement::Ext(x), FieldElement::Ext(y)) => {
                let prod = gfpoly::mul_mod(&trimmed(x), &trimmed(y), &e.modulus, e.p);
                FieldElement::Ext(pad(prod, e.degree()))
            }
            _ => panic!("field element does not match {self}"),
        }
    }

    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement, FieldError> {
        if self.is_zero(a) {
            return Err(FieldError::DivisionByZero);
        }
        Ok(match (self, a) {
            (_, FieldElement::Rational(x)) => FieldElement::Rational(x.recip()),
            (FieldSpec::Prime(p), FieldElement::Prime(x)) => {
                FieldElement::Prime(gfpoly::inv_mod_p(*x, *p).expect("nonzero"))
            }
            (FieldSpec::Extension(e), FieldElement::Ext(x)) => {
                let inv = gfpoly::inv_mod(&trimmed(x), &e.modulus, e.p)
                    .expect("modulus is irreducible");
                FieldElement::Ext(pad(inv, e.degree()))
            }
            _ => return Err(FieldError::SpecMismatch(self.to_string())),
        })
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, mut exp: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Checked arithmetic: both operands must belong to this field.
    pub fn arith(
        &self,
        a: &FieldElement,
        b: &FieldElement,
        op: ArithOp,
    ) -> Result<FieldElement, FieldError> {
        if !self.contains(a) || !self.contains(b) {
            return Err(FieldError::SpecMismatch(self.to_string()));
        }
        match op {
            ArithOp::Add => Ok(self.add(a, b)),
            ArithOp::Sub => Ok(self.sub(a, b)),
            ArithOp::Mul => Ok(self.mul(a, b)),
            ArithOp::Div => self.div(a, b),
        }
    }

    /// The `index`-th element of a finite field in coefficient order
    /// (0, 1, ..., p-1, a, a+1, ...).
    pub fn element_at(&self, index: u128) -> FieldElement {
        match self {
            FieldSpec::Rationals => self.from_i64(index as i64),
            FieldSpec::Prime(p) => FieldElement::Prime((index % *p as u128) as u64),
            FieldSpec::Extension(e) => {
                let mut rest = index;
                let v = (0..e.degree())
                    .map(|_| {
                        let c = (rest % e.p as u128) as u64;
                        rest /= e.p as u128;
                        c
                    })
                    .collect();
                FieldElement::Ext(v)
            }
        }
    }

    /// A uniformly random element for finite fields; for Q a small integer
    /// in `[-bound, bound]`.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, bound: i64) -> FieldElement {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-bound..=bound)),
            FieldSpec::Prime(p) => FieldElement::Prime(rng.gen_range(0..*p)),
            FieldSpec::Extension(e) => {
                FieldElement::Ext((0..e.degree()).map(|_| rng.gen_range(0..e.p)).collect())
            }
        }
    }

    /// Maps an element of `self` into `target`, which must contain `self`:
    /// identity, GF(p) into GF(p^k), or GF(p^k) into GF(p^(km)) via a root of
    /// the smaller modulus (found by search in the target).
    pub fn embedding_into(&self, target: &FieldSpec) -> Result<Embedding, FieldError> {
        let no = || FieldError::NoEmbedding { from: self.to_string(), to: target.to_string() };
        if self == target {
            return Ok(Embedding { target: target.clone(), image_of_generator: None });
        }
        match (self, target) {
            (FieldSpec::Prime(p), FieldSpec::Extension(e)) if *p == e.p => {
                Ok(Embedding { target: target.clone(), image_of_generator: None })
            }
            (FieldSpec::Extension(s), FieldSpec::Extension(t))
                if s.p == t.p && t.degree() % s.degree() == 0 =>
            {
                let size = target.cardinality().filter(|&c| c <= 1 << 22).ok_or_else(no)?;
                for idx in 0..size {
                    let cand = target.element_at(idx);
                    let mut acc = target.zero();
                    for &c in s.modulus.iter().rev() {
                        acc = target.add(&target.mul(&acc, &cand), &target.from_i64(c as i64));
                    }
                    if target.is_zero(&acc) {
                        return Ok(Embedding {
                            target: target.clone(),
                            image_of_generator: Some(cand),
                        });
                    }
                }
                Err(no())
            }
            _ => Err(no()),
        }
    }

    /// Formats an element; extension elements print as polynomials in `a`.
    pub fn format(&self, a: &FieldElement) -> String {
        match a {
            FieldElement::Rational(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            FieldElement::Prime(v) => v.to_string(),
            FieldElement::Ext(v) => {
                let t = trimmed(v);
                if t.is_empty() {
                    "0".into()
                } else {
                    format_dense(&t, "a")
                }
            }
        }
    }

    /// True when the formatted element is a signed/unsigned atom that needs no
    /// parentheses as a coefficient.
    pub fn is_atomic(&self, a: &FieldElement) -> bool {
        match a {
            FieldElement::Ext(v) => trimmed(v).iter().filter(|&&c| c != 0).count() <= 1,
            _ => true,
        }
    }

    /// Sign used when printing: only rationals can be negative.
    pub fn is_negative(&self, a: &FieldElement) -> bool {
        matches!(a, FieldElement::Rational(r) if r.is_negative())
    }

    pub fn as_rational<'a>(&self, a: &'a FieldElement) -> Option<&'a BigRational> {
        match a {
            FieldElement::Rational(r) => Some(r),
            _ => None,
        }
    }
}

/// A field homomorphism between two specs produced by
/// [`FieldSpec::embedding_into`].
#[derive(Debug, Clone)]
pub struct Embedding {
    target: FieldSpec,
    image_of_generator: Option<FieldElement>,
}

impl Embedding {
    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn apply(&self, a: &FieldElement) -> FieldElement {
        let t = &self.target;
        match a {
            FieldElement::Rational(_) => a.clone(),
            FieldElement::Prime(v) => t.from_i64(*v as i64),
            FieldElement::Ext(coeffs) => match &self.image_of_generator {
                None => a.clone(),
                Some(g) => {
                    let mut acc = t.zero();
                    for &c in coeffs.iter().rev() {
                        acc = t.add(&t.mul(&acc, g), &t.from_i64(c as i64));
                    }
                    acc
                }
            },
        }
    }
}

fn trimmed(v: &[u64]) -> Vec<u64> {
    let mut t = v.to_vec();
    gfpoly::trim(&mut t);
    t
}

fn pad(mut v: Vec<u64>, k: usize) -> Vec<u64> {
    v.resize(k, 0);
    v
}

fn format_dense(coeffs: &[u64], var: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        parts.push(match (c, mono.is_empty()) {
            (_, true) => c.to_string(),
            (1, false) => mono,
            (_, false) => format!("{c}*{mono}"),
        });
    }
    parts.join(" + ")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
            FieldSpec::Extension(e) => {
                write!(f, "GF({}^{}; {})", e.p, e.degree(), format_dense(&e.modulus, "a"))
            }
        }
    }
}
