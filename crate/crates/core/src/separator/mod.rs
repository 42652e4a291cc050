//! Separators from a given primary decomposition `I = Q_1 ∩ ... ∩ Q_s` with
//! `M_i = Rad(Q_i)`: residue field bases, socle spaces, and the test whether
//! `𝔪_i` has maximal separator degree `ri(R)`.

use thiserror::Error;

use crate::field::FieldElement;
use crate::ideal::{IdealError, IdealHandle};
use crate::linalg::DenseMatrix;
use crate::poly::{Polynomial, TermOrdering};
use crate::quotient::{QuotientAlgebra, QuotientError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparatorError {
    #[error("invalid decomposition: {0}")]
    Invalid(String),
    #[error("component {0} does not exist")]
    NoSuchComponent(usize),
    #[error("the exact separator degree needs k_{index} = 1, but k_{index} = {k}")]
    NotGorensteinAt { index: usize, k: usize },
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

#[derive(Debug, Clone)]
pub struct Component {
    pub primary: IdealHandle,
    pub maximal: IdealHandle,
}

/// A decomposition that passed the sanity checks of [`DecompositionInput::validate`].
#[derive(Debug, Clone)]
pub struct DecompositionInput {
    components: Vec<Component>,
    /// `ℓ_i = dim_K(P/M_i)`.
    residue_degrees: Vec<usize>,
}

fn invalid(msg: String) -> SeparatorError {
    SeparatorError::Invalid(msg)
}

impl DecompositionInput {
    /// Checks that the components intersect to `ideal`, that `Q_i ⊆ M_i`,
    /// that the `Q_i` are pairwise comaximal, that every generator of `M_i`
    /// is nilpotent modulo `Q_i`, and that each `P/M_i` is a nonzero
    /// finite-dimensional algebra. Maximality of `M_i` itself is trusted.
    pub fn validate(ideal: &IdealHandle, components: Vec<Component>) -> Result<Self, SeparatorError> {
        if components.is_empty() {
            return Err(invalid("no components".into()));
        }
        let mut residue_degrees = Vec::new();
        for (i, c) in components.iter().enumerate() {
            let n = i + 1;
            if c.primary.ambient() != ideal.ambient() || c.maximal.ambient() != ideal.ambient() {
                return Err(invalid(format!("component {n} lives in another ring")));
            }
            if c.maximal.is_unit() {
                return Err(invalid(format!("M_{n} is the unit ideal")));
            }
            let ell = c
                .maximal
                .quotient_dimension()
                .ok_or_else(|| invalid(format!("P/M_{n} is not finite-dimensional")))?;
            let big_n = c
                .primary
                .quotient_dimension()
                .ok_or_else(|| invalid(format!("P/Q_{n} is not finite-dimensional")))?;
            if !c.primary.is_subset_of(&c.maximal)? {
                return Err(invalid(format!("Q_{n} is not contained in M_{n}")));
            }
            let q = c.primary.drl();
            for g in c.maximal.gens() {
                if !power_reduces_to_zero(&q, g, big_n as u32) {
                    return Err(invalid(format!("{g} is not nilpotent modulo Q_{n}")));
                }
            }
            residue_degrees.push(ell);
        }
        for i in 0..components.len() {
            for j in i + 1..components.len() {
                if !components[i].primary.sum(&components[j].primary)?.is_unit() {
                    return Err(invalid(format!("Q_{} and Q_{} are not comaximal", i + 1, j + 1)));
                }
            }
        }
        let primaries: Vec<IdealHandle> = components.iter().map(|c| c.primary.clone()).collect();
        let meet = IdealHandle::intersection_all(&primaries)?.expect("nonempty");
        if !meet.equals(ideal)? {
            return Err(invalid("the primary components do not intersect to the ideal".into()));
        }
        Ok(DecompositionInput { components, residue_degrees })
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// `ℓ_i` for the 1-based component index `i`.
    pub fn residue_degree(&self, i: usize) -> Result<usize, SeparatorError> {
        self.residue_degrees.get(i.wrapping_sub(1)).copied().ok_or(SeparatorError::NoSuchComponent(i))
    }

    fn component(&self, i: usize) -> Result<&Component, SeparatorError> {
        self.components.get(i.wrapping_sub(1)).ok_or(SeparatorError::NoSuchComponent(i))
    }
}

/// Whether `NF(g^n) = 0`, by square-and-multiply on normal forms.
fn power_reduces_to_zero(q: &crate::ideal::GroebnerBasis, g: &Polynomial, mut n: u32) -> bool {
    let mut acc = Polynomial::one(g.ambient(), TermOrdering::DegRevLex);
    let mut base = q.normal_form(g);
    while n > 0 {
        if n & 1 == 1 {
            acc = q.normal_form(&acc.mul(&base));
        }
        base = q.normal_form(&base.mul(&base));
        n >>= 1;
    }
    acc.is_zero()
}

/// A basis of the socle space `S_i`, with `m_i = ℓ_i·k_i`.
#[derive(Debug, Clone)]
pub struct SocleSpace {
    pub index: usize,
    pub basis: Vec<Polynomial>,
    pub m: usize,
    pub ell: usize,
    pub k: usize,
}

/// The residue classes of quotient-basis monomials of `P/M_i`.
pub fn residue_field_basis(d: &DecompositionInput, i: usize) -> Result<Vec<Polynomial>, SeparatorError> {
    let c = d.component(i)?;
    let gb = c.maximal.drl();
    let ambient = c.maximal.ambient();
    let monos = gb.standard_monomials().expect("validated as finite-dimensional");
    Ok(monos.into_iter().map(|m| Polynomial::monomial(ambient, TermOrdering::DegRevLex, m)).collect())
}

/// A canonical basis of the image of `J` in `R`: normal forms of `t·g` for
/// `g` in the basis of `J` and `t` in the quotient basis, row-reduced with
/// pivots on the largest monomial, each element monic, sorted ascending by
/// leading monomial.
pub fn image_in_quotient(j: &IdealHandle, a: &QuotientAlgebra) -> Vec<Polynomial> {
    let mut rows = Vec::new();
    for g in j.drl().gens() {
        let g = a.normal_form(g);
        for t in a.basis() {
            let mut v = a.coordinates(&g.mul_monomial(t));
            v.reverse();
            rows.push(v);
        }
    }
    if rows.is_empty() {
        return Vec::new();
    }
    let m = DenseMatrix::from_rows(a.field(), rows).expect("rows of equal length");
    let (r, pivots) = m.rref();
    let mut out: Vec<Polynomial> = (0..pivots.len())
        .map(|k| {
            let mut v: Vec<FieldElement> = r.row(k).to_vec();
            v.reverse();
            a.from_coordinates(&v).expect("length d")
        })
        .collect();
    out.sort_by(|p, q| TermOrdering::DegRevLex.compare(p.leading_monomial().unwrap(), q.leading_monomial().unwrap()));
    out
}

/// `J_S = (Q_i : M_i) ∩ ⋂_{j≠i} Q_j`, the preimage of the socle of the
/// `i`-th local factor.
pub fn socle_ideal(d: &DecompositionInput, i: usize) -> Result<IdealHandle, SeparatorError> {
    let c = d.component(i)?;
    let mut parts = vec![c.primary.colon(&c.maximal)?];
    parts.extend(
        d.components.iter().enumerate().filter(|(k, _)| *k + 1 != i).map(|(_, c)| c.primary.clone()),
    );
    Ok(IdealHandle::intersection_all(&parts)?.expect("nonempty"))
}

pub fn socle_space(d: &DecompositionInput, i: usize, a: &QuotientAlgebra) -> Result<SocleSpace, SeparatorError> {
    let ell = d.residue_degree(i)?;
    let basis = image_in_quotient(&socle_ideal(d, i)?, a);
    let m = basis.len();
    if m == 0 || !m.is_multiple_of(ell) {
        return Err(invalid(format!("socle space {i} has dimension {m}, not a positive multiple of ℓ = {ell}")));
    }
    Ok(SocleSpace { index: i, basis, m, ell, k: m / ell })
}

#[derive(Debug, Clone)]
pub struct MaxSepdeg {
    pub holds: bool,
    /// Block `j` holds the leading-form coordinates of `e_j·f_k` in column `k`.
    pub matrix: DenseMatrix,
    pub rank: usize,
    pub socle: SocleSpace,
}

/// Whether `sepdeg(𝔪_i) = ri(R)`: the stacked leading-form matrix has full
/// column rank `m_i`.
pub fn check_max_sepdeg(d: &DecompositionInput, i: usize, a: &QuotientAlgebra) -> Result<MaxSepdeg, SeparatorError> {
    let socle = socle_space(d, i, a)?;
    let e = residue_field_basis(d, i)?;
    let delta = a.delta();
    let mut matrix = DenseMatrix::zeros(a.field(), e.len() * delta, socle.m);
    for (j, ej) in e.iter().enumerate() {
        for (k, fk) in socle.basis.iter().enumerate() {
            for (r, c) in a.leading_form_coords(&ej.mul(fk)).into_iter().enumerate() {
                matrix.set(j * delta + r, k, c);
            }
        }
    }
    let rank = matrix.rank();
    Ok(MaxSepdeg { holds: rank == socle.m, matrix, rank, socle })
}

/// `sepdeg(𝔪_i) = max_j ord_F(e_j·f)` for a nonzero `f ∈ S_i`, valid when
/// the local factor is Gorenstein (`k_i = 1`).
pub fn sepdeg_gorenstein_case(d: &DecompositionInput, i: usize, a: &QuotientAlgebra) -> Result<u32, SeparatorError> {
    let socle = socle_space(d, i, a)?;
    if socle.k != 1 {
        return Err(SeparatorError::NotGorensteinAt { index: i, k: socle.k });
    }
    let f = &socle.basis[0];
    let e = residue_field_basis(d, i)?;
    Ok(e.iter().filter_map(|ej| a.order_of(&ej.mul(f))).max().expect("a separator times 1 is nonzero"))
}

#[derive(Debug, Clone)]
pub struct ComponentReport {
    pub index: usize,
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    pub rank: usize,
    pub max_sepdeg: bool,
    /// Exact separator degree, when `k_i = 1`.
    pub sepdeg: Option<u32>,
}

#[derive(Debug, Clone)]
pub struct SeparatorReport {
    pub holds: bool,
    pub components: Vec<ComponentReport>,
}

/// CBP iff every `𝔪_i` has maximal separator degree.
pub fn check_cbp_via_separators(d: &DecompositionInput, a: &QuotientAlgebra) -> Result<SeparatorReport, SeparatorError> {
    let mut components = Vec::new();
    for i in 1..=d.len() {
        let ms = check_max_sepdeg(d, i, a)?;
        let sepdeg = if ms.socle.k == 1 { Some(sepdeg_gorenstein_case(d, i, a)?) } else { None };
        components.push(ComponentReport {
            index: i,
            ell: ms.socle.ell,
            m: ms.socle.m,
            k: ms.socle.k,
            rank: ms.rank,
            max_sepdeg: ms.holds,
            sepdeg,
        });
    }
    Ok(SeparatorReport { holds: components.iter().all(|c| c.max_sepdeg), components })
}
