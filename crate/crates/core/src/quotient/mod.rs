//! The finite-dimensional algebra `R = P/I` with its degree-filtered basis.
//!
//! The basis is the set of DegRevLex standard monomials sorted by degree and
//! then by the ordering, so the order of a basis element is its degree and
//! the affine Hilbert function is a count over the order tuple.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::ideal::{GroebnerBasis, IdealHandle};
use crate::linalg::DenseMatrix;
use crate::poly::{Ambient, Monomial, Polynomial, TermOrdering};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("the ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("the ideal is the whole ring, so the quotient is zero")]
    ZeroRing,
    #[error("vector of length {got} for an algebra of dimension {expected}")]
    Length { got: usize, expected: usize },
}

pub struct QuotientAlgebra {
    ideal: IdealHandle,
    gb: Arc<GroebnerBasis>,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    orders: Vec<u32>,
    hf: Vec<usize>,
    ri: usize,
    mult: OnceLock<Vec<DenseMatrix>>,
    var_mult: OnceLock<Vec<DenseMatrix>>,
}

impl std::fmt::Debug for QuotientAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientAlgebra")
            .field("basis", &self.basis_strings())
            .field("hf", &self.hf)
            .field("ri", &self.ri)
            .finish()
    }
}

impl QuotientAlgebra {
    pub fn build(ideal: &IdealHandle) -> Result<Self, QuotientError> {
        let gb = ideal.drl();
        if gb.is_unit() {
            return Err(QuotientError::ZeroRing);
        }
        let mut basis = gb.standard_monomials().ok_or(QuotientError::NotZeroDimensional)?;
        // DegRevLex already sorts by degree first
        basis.sort_by(|a, b| TermOrdering::DegRevLex.compare(a, b));
        let orders: Vec<u32> = basis.iter().map(|m| m.degree()).collect();
        let ri = *orders.last().expect("nonempty basis") as usize;
        let hf = (0..=ri).map(|i| orders.iter().filter(|&&o| o as usize <= i).count()).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        Ok(QuotientAlgebra {
            ideal: ideal.clone(),
            gb,
            basis,
            index,
            orders,
            hf,
            ri,
            mult: OnceLock::new(),
            var_mult: OnceLock::new(),
        })
    }

    pub fn ideal(&self) -> &IdealHandle {
        &self.ideal
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        self.ideal.ambient()
    }

    pub fn field(&self) -> &FieldSpec {
        self.ambient().field()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_strings(&self) -> Vec<String> {
        self.basis.iter().map(|m| m.format(self.ambient().vars())).collect()
    }

    pub fn basis_polynomial(&self, i: usize) -> Polynomial {
        Polynomial::monomial(self.ambient(), TermOrdering::DegRevLex, self.basis[i].clone())
    }

    /// `ord_F(b_i)` for each basis element.
    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Affine Hilbert function values `HF(0), ..., HF(ri)`.
    pub fn hf(&self) -> &[usize] {
        &self.hf
    }

    /// `HF(i)` for any `i`, constant `d` from `ri` on.
    pub fn hf_at(&self, i: i64) -> usize {
        if i < 0 {
            0
        } else {
            self.hf[(i as usize).min(self.ri)]
        }
    }

    pub fn ri(&self) -> usize {
        self.ri
    }

    /// `Δ_R = HF(ri) − HF(ri − 1)`; for `ri = 0` this is `HF(0) = 1`.
    pub fn delta(&self) -> usize {
        self.hf_at(self.ri as i64) - self.hf_at(self.ri as i64 - 1)
    }

    /// First differences of the Hilbert function, `HF(i) − HF(i−1)` for
    /// `i = 0..=ri`.
    pub fn castelnuovo(&self) -> Vec<usize> {
        (0..=self.ri as i64).map(|i| self.hf_at(i) - self.hf_at(i - 1)).collect()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.gb.normal_form(f)
    }

    /// Coordinates of `NF(f)` in the basis.
    pub fn coordinates(&self, f: &Polynomial) -> Vec<FieldElement> {
        let nf = self.normal_form(f);
        let mut v = vec![self.field().zero(); self.dim()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        v
    }

    pub fn from_coordinates(&self, v: &[FieldElement]) -> Result<Polynomial, QuotientError> {
        if v.len() != self.dim() {
            return Err(QuotientError::Length { got: v.len(), expected: self.dim() });
        }
        Ok(Polynomial::from_terms(
            self.ambient(),
            TermOrdering::DegRevLex,
            self.basis.iter().cloned().zip(v.iter().cloned()),
        ))
    }

    /// `ord_F(f) = deg NF(f)`; `None` when `f ∈ I`.
    pub fn order_of(&self, f: &Polynomial) -> Option<u32> {
        self.normal_form(f).degree()
    }

    /// Matrix of multiplication by `f`: column `j` holds the coordinates of
    /// `NF(f·b_j)`.
    pub fn mult_matrix(&self, f: &Polynomial) -> DenseMatrix {
        let d = self.dim();
        let mut m = DenseMatrix::zeros(self.field(), d, d);
        let nf = self.normal_form(f);
        for j in 0..d {
            let col = self.coordinates(&nf.mul_monomial(&self.basis[j]));
            for (r, e) in col.into_iter().enumerate() {
                m.set(r, j, e);
            }
        }
        m
    }

    /// Multiplication matrices of the variables, cached.
    pub fn variable_matrices(&self) -> &[DenseMatrix] {
        self.var_mult.get_or_init(|| {
            (0..self.ambient().nvars())
                .map(|k| self.mult_matrix(&Polynomial::var(self.ambient(), TermOrdering::DegRevLex, k)))
                .collect()
        })
    }

    /// `M_B(θ_{b_i})` for every basis element, cached. Each `b_i ≠ 1` is a
    /// variable times an earlier basis element because the standard
    /// monomials form an order ideal.
    pub fn basis_matrices(&self) -> &[DenseMatrix] {
        self.mult.get_or_init(|| {
            let vars = self.variable_matrices();
            let n = self.ambient().nvars();
            let mut out: Vec<DenseMatrix> = Vec::with_capacity(self.dim());
            for b in &self.basis {
                if b.is_one() {
                    out.push(DenseMatrix::identity(self.field(), self.dim()));
                    continue;
                }
                let (k, prev) = (0..n)
                    .find_map(|k| {
                        Monomial::var(n, k).quotient_of(b).and_then(|q| self.index.get(&q).map(|&i| (k, i)))
                    })
                    .expect("standard monomials form an order ideal");
                out.push(vars[k].mul(&out[prev]).expect("square matrices of one size"));
            }
            out
        })
    }

    /// Indices of the basis elements of top order `ri`.
    pub fn top_indices(&self) -> std::ops::Range<usize> {
        self.dim() - self.delta()..self.dim()
    }

    /// Coordinates of the image of `NF(f)` in `F_ri R / F_(ri−1) R` with
    /// respect to the basis elements of order `ri`; zero if `ord_F(f) < ri`.
    pub fn leading_form_coords(&self, f: &Polynomial) -> Vec<FieldElement> {
        let c = self.coordinates(f);
        c[self.top_indices()].to_vec()
    }

    /// Symmetry of the Castelnuovo function, checked in two equivalent
    /// ways which must agree.
    pub fn is_symmetric_hf(&self) -> bool {
        let ri = self.ri as i64;
        let diffs = self.castelnuovo();
        let by_differences = (0..=self.ri).all(|i| diffs[self.ri - i] == diffs[i]);
        let d = self.dim();
        let by_values = (0..=ri).all(|i| d - self.hf_at(ri - i) == self.hf_at(i - 1));
        assert_eq!(by_differences, by_values, "symmetry criteria disagree for HF {:?}", self.hf);
        by_differences
    }

    /// `HF` of the canonical module: `d − HF(−i − 1)`.
    pub fn hf_omega(&self, i: i64) -> usize {
        self.dim() - self.hf_at(-i - 1)
    }
}

/// A linear form `c_1 b_1* + ... + c_d b_d*` on `R` in the dual basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Functional {
    pub coeffs: Vec<FieldElement>,
}

impl Functional {
    pub fn new(coeffs: Vec<FieldElement>) -> Self {
        Functional { coeffs }
    }

    /// The dual basis element `b_i*`.
    pub fn dual_basis(a: &QuotientAlgebra, i: usize) -> Self {
        let mut coeffs = vec![a.field().zero(); a.dim()];
        coeffs[i] = a.field().one();
        Functional { coeffs }
    }

    /// `ord_G(φ) = −max{ord_F(b_i) : c_i ≠ 0}`; `None` for `φ = 0`.
    pub fn order(&self, a: &QuotientAlgebra) -> Option<i64> {
        let f = a.field();
        self.coeffs
            .iter()
            .zip(a.orders())
            .filter(|(c, _)| !f.is_zero(c))
            .map(|(_, &o)| -(o as i64))
            .min()
    }

    /// `φ(f)` on the normal form of `f`.
    pub fn apply(&self, a: &QuotientAlgebra, f: &Polynomial) -> FieldElement {
        let field = a.field();
        a.coordinates(f)
            .iter()
            .zip(&self.coeffs)
            .fold(field.zero(), |acc, (x, c)| field.add(&acc, &field.mul(x, c)))
    }
}
