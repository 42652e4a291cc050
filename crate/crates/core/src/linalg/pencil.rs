//! Square matrices whose entries are linear forms `z_1 V_1 + ... + z_m V_m`,
//! and the decision whether their determinant vanishes identically.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{bareiss_det, DenseMatrix, LinalgError, PolynomialDomain};
use crate::field::{Embedding, FieldElement, FieldSpec};
use crate::poly::{Ambient, Monomial, Polynomial, TermOrdering};

/// Exhaustive search over base-field points is attempted up to this many
/// points before moving to an extension.
const EXHAUSTIVE_LIMIT: u128 = 1 << 14;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DetMode {
    /// Expand the determinant as a polynomial in the pencil variables.
    Symbolic,
    /// Search evaluation points; certify vanishing on a unisolvent grid.
    Evaluated,
    /// Symbolic for at most three variables, evaluated otherwise.
    #[default]
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PencilOptions {
    pub mode: DetMode,
    pub seed: u64,
    /// Largest extension degree over the prime field that may be built.
    pub max_extension: usize,
    pub random_trials: usize,
}

impl Default for PencilOptions {
    fn default() -> Self {
        PencilOptions { mode: DetMode::Auto, seed: 0x00c0_ffee, max_extension: 16, random_trials: 8 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PencilVerdict {
    pub nonzero: bool,
    /// The determinant as a polynomial, when computed symbolically.
    pub determinant: Option<Polynomial>,
    /// A point of `field_used^m` where the determinant does not vanish.
    pub witness: Option<Vec<FieldElement>>,
    pub field_used: FieldSpec,
    pub mode_used: DetMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LinearPencil {
    field: FieldSpec,
    size: usize,
    coeffs: Vec<DenseMatrix>,
    names: Vec<String>,
}

impl LinearPencil {
    /// `names[j]` labels the variable multiplying `coeffs[j]`.
    pub fn new(coeffs: Vec<DenseMatrix>, names: Vec<String>) -> Result<Self, LinalgError> {
        let first = coeffs.first().ok_or_else(|| LinalgError::Shape("pencil without variables".into()))?;
        let size = first.rows();
        let field = first.field().clone();
        if names.len() != coeffs.len() {
            return Err(LinalgError::Shape("one name per coefficient matrix".into()));
        }
        for c in &coeffs {
            if c.rows() != size || c.cols() != size {
                return Err(LinalgError::Shape("pencil coefficients must be square of one size".into()));
            }
            if *c.field() != field {
                return Err(LinalgError::Shape("pencil coefficients over different fields".into()));
            }
        }
        Ok(LinearPencil { field, size, coeffs, names })
    }

    /// Variables named `z{offset+1}`, `z{offset+2}`, ...
    pub fn with_z_names(coeffs: Vec<DenseMatrix>, offset: usize) -> Result<Self, LinalgError> {
        let names = (0..coeffs.len()).map(|j| format!("z{}", offset + j + 1)).collect();
        Self::new(coeffs, names)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn nvars(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coefficients(&self) -> &[DenseMatrix] {
        &self.coeffs
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// The ring `K[z_1..z_m]` the symbolic determinant lives in.
    pub fn variable_ring(&self) -> Arc<Ambient> {
        Ambient::new(self.names.clone(), self.field.clone())
    }

    /// `C(point)` with the point taken in `emb.target()`.
    pub fn evaluate(&self, point: &[FieldElement], emb: &Embedding) -> Result<DenseMatrix, LinalgError> {
        if point.len() != self.nvars() {
            return Err(LinalgError::Shape(format!("point of length {} for {} variables", point.len(), self.nvars())));
        }
        let l = emb.target();
        let mut acc = DenseMatrix::zeros(l, self.size, self.size);
        for (c, z) in self.coeffs.iter().zip(point) {
            if !l.is_zero(z) {
                acc = acc.add(&c.map_field(emb).scale(z))?;
            }
        }
        Ok(acc)
    }

    /// The entries of `C(z)` as linear forms.
    pub fn entry_polynomials(&self) -> Vec<Vec<Polynomial>> {
        let ring = self.variable_ring();
        let m = self.nvars();
        (0..self.size)
            .map(|r| {
                (0..self.size)
                    .map(|c| {
                        Polynomial::from_terms(
                            &ring,
                            TermOrdering::DegRevLex,
                            self.coeffs.iter().enumerate().map(|(j, v)| (Monomial::var(m, j), v.get(r, c).clone())),
                        )
                    })
                    .collect()
            })
            .collect()
    }

    /// `det C(z)` expanded by Bareiss over the polynomial ring.
    pub fn symbolic_det(&self) -> Polynomial {
        let ring = self.variable_ring();
        bareiss_det(&PolynomialDomain(ring), self.entry_polynomials())
    }

    pub fn decide(&self, opts: &PencilOptions) -> Result<PencilVerdict, LinalgError> {
        let mode = match opts.mode {
            DetMode::Auto if self.nvars() <= 3 => DetMode::Symbolic,
            DetMode::Auto => DetMode::Evaluated,
            m => m,
        };
        if mode == DetMode::Symbolic {
            let det = self.symbolic_det();
            if det.is_zero() {
                return Ok(PencilVerdict {
                    nonzero: false,
                    determinant: Some(det),
                    witness: None,
                    field_used: self.field.clone(),
                    mode_used: mode,
                });
            }
            let (witness, field_used) =
                self.search(opts, |point, emb| !emb.target().is_zero(&det.evaluate(point, emb)))?;
            debug_assert!(witness.is_some(), "a nonzero polynomial has a nonvanishing grid point");
            return Ok(PencilVerdict { nonzero: true, determinant: Some(det), witness, field_used, mode_used: mode });
        }
        let (witness, field_used) = self.search(opts, |point, emb| {
            let m = self.evaluate(point, emb).expect("point has the right length");
            !emb.target().is_zero(&m.det().expect("square"))
        })?;
        Ok(PencilVerdict { nonzero: witness.is_some(), determinant: None, witness, field_used, mode_used: mode })
    }

    /// Looks for a point where `nonzero_at` holds. Finite base fields that
    /// are too small are searched exhaustively and then extended.
    fn search<F>(&self, opts: &PencilOptions, nonzero_at: F) -> Result<(Option<Vec<FieldElement>>, FieldSpec), LinalgError>
    where
        F: Fn(&[FieldElement], &Embedding) -> bool,
    {
        let m = self.nvars();
        let d = self.size;
        let base = &self.field;
        let mut target = base.clone();
        if let Some(q) = base.cardinality() {
            if q < d as u128 + 1 {
                let id = base.embedding_into(base)?;
                if let Some(total) = q.checked_pow(m as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT) {
                    for idx in 0..total {
                        let point = digits(idx, q, m).into_iter().map(|i| base.element_at(i)).collect::<Vec<_>>();
                        if nonzero_at(&point, &id) {
                            return Ok((Some(point), base.clone()));
                        }
                    }
                }
                target = smallest_extension(base, d as u128 + 1, opts.max_extension)?;
            }
        }
        let emb = base.embedding_into(&target)?;

        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        let bound = 4 * (d as i64 + 1);
        for _ in 0..opts.random_trials {
            let point: Vec<_> = (0..m).map(|_| target.random(&mut rng, bound)).collect();
            if nonzero_at(&point, &emb) {
                return Ok((Some(point), target));
            }
        }

        // The determinant is homogeneous of degree d, so it vanishes iff it
        // vanishes with the last coordinate set to 1. A polynomial of degree
        // at most d in m-1 variables is determined by its values on
        // {(s_a1, ..., s_a(m-1)) : a1 + ... + a(m-1) <= d} for distinct s_i.
        let s: Vec<FieldElement> = (0..=d as u128).map(|i| target.element_at(i)).collect();
        let mut found = None;
        for_each_lower_set_point(m - 1, d, &mut |alpha| {
            let mut point: Vec<_> = alpha.iter().map(|&a| s[a].clone()).collect();
            point.push(target.one());
            if nonzero_at(&point, &emb) {
                found = Some(point);
                return false;
            }
            true
        });
        Ok((found, target))
    }
}

fn digits(mut idx: u128, base: u128, len: usize) -> Vec<u128> {
    (0..len)
        .map(|_| {
            let d = idx % base;
            idx /= base;
            d
        })
        .collect()
}

/// The smallest GF(p^k) containing `base` with at least `needed` elements.
fn smallest_extension(base: &FieldSpec, needed: u128, max_degree: usize) -> Result<FieldSpec, LinalgError> {
    let p = base.characteristic();
    let step = base.degree();
    let mut k = step;
    while k <= max_degree {
        if (p as u128).checked_pow(k as u32).is_none_or(|q| q >= needed) {
            return Ok(FieldSpec::extension(p, k)?);
        }
        k += step;
    }
    Err(LinalgError::ExtensionLimit { field: base.to_string(), needed, max_degree })
}

/// Visits every `alpha` in `N^n` with `|alpha| <= d` in lexicographic order
/// until `visit` returns false.
fn for_each_lower_set_point(n: usize, d: usize, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(alpha: &mut Vec<usize>, n: usize, budget: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if alpha.len() == n {
            return visit(alpha);
        }
        for a in 0..=budget {
            alpha.push(a);
            let go_on = rec(alpha, n, budget - a, visit);
            alpha.pop();
            if !go_on {
                return false;
            }
        }
        true
    }
    rec(&mut Vec::with_capacity(n), n, d, visit);
}
