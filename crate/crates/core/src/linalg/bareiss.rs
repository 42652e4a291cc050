//! Fraction-free determinant over any exact integral domain.

use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::field::{FieldElement, FieldSpec};
use crate::poly::{Ambient, Polynomial, TermOrdering};

/// The ring operations Bareiss needs. `div_exact` is only ever called when
/// the division is exact.
pub trait ExactDomain {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
}

pub struct IntegerDomain;

impl ExactDomain for IntegerDomain {
    type Elem = BigInt;
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> BigInt {
        debug_assert!((a % b).is_zero());
        a / b
    }
}

pub struct FieldDomain(pub FieldSpec);

impl ExactDomain for FieldDomain {
    type Elem = FieldElement;
    fn zero(&self) -> FieldElement {
        self.0.zero()
    }
    fn one(&self) -> FieldElement {
        self.0.one()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        self.0.is_zero(a)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.0.mul(a, b)
    }
    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.0.sub(a, b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        self.0.neg(a)
    }
    fn div_exact(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.0.div(a, b).expect("Bareiss divides by a nonzero pivot")
    }
}

/// Multivariate polynomials over a field, ordered by DegRevLex.
pub struct PolynomialDomain(pub Arc<Ambient>);

impl ExactDomain for PolynomialDomain {
    type Elem = Polynomial;
    fn zero(&self) -> Polynomial {
        Polynomial::zero(&self.0, TermOrdering::DegRevLex)
    }
    fn one(&self) -> Polynomial {
        Polynomial::one(&self.0, TermOrdering::DegRevLex)
    }
    fn is_zero(&self, a: &Polynomial) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.mul(b)
    }
    fn sub(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.sub(b)
    }
    fn neg(&self, a: &Polynomial) -> Polynomial {
        a.neg()
    }
    fn div_exact(&self, a: &Polynomial, b: &Polynomial) -> Polynomial {
        a.div_exact(b).expect("Bareiss quotients are exact in a polynomial ring")
    }
}

/// Determinant of a square matrix given by rows. Pivoting takes the first
/// row with a nonzero entry in the current column.
pub fn bareiss_det<D: ExactDomain>(dom: &D, mut m: Vec<Vec<D::Elem>>) -> D::Elem {
    let n = m.len();
    if n == 0 {
        return dom.one();
    }
    let mut negate = false;
    let mut prev = dom.one();
    for k in 0..n - 1 {
        if dom.is_zero(&m[k][k]) {
            let Some(p) = (k + 1..n).find(|&i| !dom.is_zero(&m[i][k])) else {
                return dom.zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, bottom) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        for row in bottom.iter_mut() {
            for j in k + 1..n {
                let t = dom.sub(&dom.mul(&row[j], &pivot_row[k]), &dom.mul(&row[k], &pivot_row[j]));
                row[j] = dom.div_exact(&t, &prev);
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        dom.neg(&d)
    } else {
        d
    }
}
