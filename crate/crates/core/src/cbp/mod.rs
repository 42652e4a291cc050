//! Decision procedures on a quotient algebra: the Cayley-Bacharach property
//! via the canonical module, local Gorenstein-ness, their combination, and
//! the strict variants through the degree-form ideal.
//!
//! All matrices are assembled from the structure constants
//! `A_k[r][i] = coefficient of b_k in b_i·b_r`, which is row `k` of
//! `M_B(θ_{b_i})` read as column `i`. `A_k` is the coefficient matrix of
//! `z_k` in the pencil `C`, and the blocks `V_j` are the last `Δ` of them.

use thiserror::Error;

use crate::field::{FieldElement, FieldSpec};
use crate::ideal::{IdealError, IdealHandle};
use crate::linalg::{DenseMatrix, LinalgError, LinearPencil, PencilOptions, PencilVerdict};
use crate::poly::Polynomial;
use crate::quotient::{Functional, QuotientAlgebra, QuotientError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CbpError {
    #[error("this check needs Δ_R = 1, but Δ_R = {0}")]
    DeltaNotOne(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// `A_k` with `A_k[r][i]` the coefficient of `b_k` in `b_i·b_r`.
pub fn structure_matrix(a: &QuotientAlgebra, k: usize) -> DenseMatrix {
    let mats = a.basis_matrices();
    let d = a.dim();
    let mut out = DenseMatrix::zeros(a.field(), d, d);
    for (i, m) in mats.iter().enumerate() {
        for r in 0..d {
            out.set(r, i, m.get(k, r).clone());
        }
    }
    out
}

/// The blocks `V_1..V_Δ` and their vertical stack `W`.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalMatrices {
    pub v: Vec<DenseMatrix>,
    pub w: DenseMatrix,
    pub delta: usize,
}

impl CanonicalMatrices {
    pub fn new(a: &QuotientAlgebra) -> Self {
        let v: Vec<DenseMatrix> = a.top_indices().map(|k| structure_matrix(a, k)).collect();
        let w = DenseMatrix::vstack(&v).expect("blocks share a shape");
        CanonicalMatrices { v, w, delta: a.delta() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CbpVerdict {
    pub holds: bool,
    /// Coordinates of a nonzero element annihilating `G_{−ri}ω_R`.
    pub kernel_witness: Option<Vec<FieldElement>>,
}

/// CBP holds iff `Ker(W) = 0`.
pub fn check_cbp(a: &QuotientAlgebra) -> CbpVerdict {
    let cm = CanonicalMatrices::new(a);
    let kernel = cm.w.kernel();
    CbpVerdict { holds: kernel.is_empty(), kernel_witness: kernel.into_iter().next() }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GorensteinVerdict {
    pub holds: bool,
    pub pencil: PencilVerdict,
    /// `c_1 b_1* + ... + c_d b_d*` from the witness point, when the point
    /// lies in the base field.
    pub generator: Option<Functional>,
}

/// The pencil `C = z_1 A_1 + ... + z_d A_d`.
pub fn gorenstein_pencil(a: &QuotientAlgebra) -> LinearPencil {
    let coeffs = (0..a.dim()).map(|k| structure_matrix(a, k)).collect();
    LinearPencil::with_z_names(coeffs, 0).expect("structure matrices are square")
}

/// The pencil `C_0 = z_{d−Δ+1} V_1 + ... + z_d V_Δ`.
pub fn gor_cbp_pencil(a: &QuotientAlgebra) -> LinearPencil {
    let cm = CanonicalMatrices::new(a);
    LinearPencil::with_z_names(cm.v, a.dim() - a.delta()).expect("blocks are square")
}

/// Locally Gorenstein iff `det C ≠ 0`.
pub fn check_locally_gorenstein(a: &QuotientAlgebra, opts: &PencilOptions) -> Result<GorensteinVerdict, CbpError> {
    let pencil = gorenstein_pencil(a).decide(opts)?;
    let generator = match (&pencil.witness, pencil.field_used == *a.field()) {
        (Some(w), true) => Some(Functional::new(w.clone())),
        _ => None,
    };
    Ok(GorensteinVerdict { holds: pencil.nonzero, pencil, generator })
}

/// Locally Gorenstein with CBP iff `det C_0 ≠ 0`.
pub fn check_gor_cbp(a: &QuotientAlgebra, opts: &PencilOptions) -> Result<PencilVerdict, CbpError> {
    Ok(gor_cbp_pencil(a).decide(opts)?)
}

/// For `Δ_R = 1`: CBP iff `det V_1 ≠ 0`.
pub fn check_cbp_delta1(a: &QuotientAlgebra) -> Result<bool, CbpError> {
    if a.delta() != 1 {
        return Err(CbpError::DeltaNotOne(a.delta()));
    }
    let v1 = structure_matrix(a, a.dim() - 1);
    let holds = !a.field().is_zero(&v1.det()?);
    debug_assert_eq!(holds, check_cbp(a).holds, "Δ = 1 shortcut disagrees with Ker(W)");
    Ok(holds)
}

/// `Λ_c = Σ c_k A_k`; the annihilator of `φ` is zero iff `det Λ_c ≠ 0`.
pub fn annihilator_matrix(phi: &Functional, a: &QuotientAlgebra) -> Result<DenseMatrix, CbpError> {
    if phi.coeffs.len() != a.dim() {
        return Err(QuotientError::Length { got: phi.coeffs.len(), expected: a.dim() }.into());
    }
    let f = a.field();
    let mut acc = DenseMatrix::zeros(f, a.dim(), a.dim());
    for (k, c) in phi.coeffs.iter().enumerate() {
        if !f.is_zero(c) {
            acc = acc.add(&structure_matrix(a, k).scale(c))?;
        }
    }
    Ok(acc)
}

pub fn annihilator_is_zero(phi: &Functional, a: &QuotientAlgebra) -> Result<bool, CbpError> {
    let det = annihilator_matrix(phi, a)?.det()?;
    Ok(!a.field().is_zero(&det))
}

/// CBP of `P/DF(I)`.
pub fn check_strict_cbp(ideal: &IdealHandle) -> Result<bool, CbpError> {
    let gr = QuotientAlgebra::build(&ideal.degree_form_ideal()?)?;
    Ok(check_cbp(&gr).holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StrictGorenstein {
    pub holds: bool,
    /// CBP and symmetric Hilbert function.
    pub via_cbp_and_symmetry: bool,
    /// Strict CBP and `Δ_R = 1`.
    pub via_strict_cbp: bool,
}

/// Evaluates both characterizations and insists that they agree.
pub fn check_strict_gorenstein(a: &QuotientAlgebra) -> Result<StrictGorenstein, CbpError> {
    let first = check_cbp(a).holds && a.is_symmetric_hf();
    let second = a.delta() == 1 && check_strict_cbp(a.ideal())?;
    if first != second {
        return Err(CbpError::Inconsistent(format!(
            "strict Gorenstein: CBP and symmetric HF gives {first}, strict CBP and Δ = 1 gives {second}"
        )));
    }
    Ok(StrictGorenstein { holds: first, via_cbp_and_symmetry: first, via_strict_cbp: second })
}

/// `HF(i) + HF(ri − 1 − i) ≤ d` for `i = 0..ri−1`.
pub fn hf_inequality_check(a: &QuotientAlgebra) -> bool {
    let ri = a.ri() as i64;
    (0..ri).all(|i| a.hf_at(i) + a.hf_at(ri - 1 - i) <= a.dim())
}

#[derive(Debug, Clone, PartialEq)]
pub struct PropertyReport {
    pub dim: usize,
    pub hf: Vec<usize>,
    pub ri: usize,
    pub delta: usize,
    pub castelnuovo: Vec<usize>,
    pub cbp: bool,
    pub locally_gorenstein: bool,
    pub gor_and_cbp: bool,
    pub strict_cbp: bool,
    pub strict_gorenstein: bool,
    pub symmetric_hf: bool,
    pub hf_inequality: bool,
    pub cbp_kernel_witness: Option<Vec<FieldElement>>,
    pub generator: Option<Functional>,
    pub gorenstein_witness: Option<Vec<FieldElement>>,
    pub gor_cbp_witness: Option<Vec<FieldElement>>,
    pub det_c: Option<Polynomial>,
    pub det_c0: Option<Polynomial>,
    pub field_used: FieldSpec,
}

impl PropertyReport {
    /// The logical relations between the verdicts.
    pub fn check_coherence(&self) -> Result<(), CbpError> {
        let rules = [
            (!self.gor_and_cbp || (self.cbp && self.locally_gorenstein), "Gor+CBP implies CBP and Gorenstein"),
            (self.gor_and_cbp == (self.cbp && self.locally_gorenstein), "Gor+CBP equals CBP and Gorenstein"),
            (!self.strict_cbp || self.cbp, "strict CBP implies CBP"),
            (!self.strict_gorenstein || self.locally_gorenstein, "strict Gorenstein implies Gorenstein"),
            (self.strict_gorenstein == (self.cbp && self.symmetric_hf), "strict Gorenstein equals CBP and symmetric HF"),
            (self.strict_gorenstein == (self.strict_cbp && self.delta == 1), "strict Gorenstein equals strict CBP and Δ = 1"),
            (self.delta != 1 || self.cbp == self.gor_and_cbp, "with Δ = 1, CBP equals Gor+CBP"),
            (!self.gor_and_cbp || self.hf_inequality, "Gor+CBP implies the HF inequality"),
        ];
        match rules.iter().find(|(ok, _)| !ok) {
            Some((_, rule)) => Err(CbpError::Inconsistent((*rule).to_string())),
            None => Ok(()),
        }
    }
}

/// Runs every check and verifies the report's coherence.
pub fn analyze(a: &QuotientAlgebra, opts: &PencilOptions) -> Result<PropertyReport, CbpError> {
    let cbp = check_cbp(a);
    let gor = check_locally_gorenstein(a, opts)?;
    let gor_cbp = check_gor_cbp(a, opts)?;
    let strict_cbp = check_strict_cbp(a.ideal())?;
    let strict = check_strict_gorenstein(a)?;
    if a.delta() == 1 && check_cbp_delta1(a)? != cbp.holds {
        return Err(CbpError::Inconsistent("Δ = 1 shortcut disagrees with Ker(W)".into()));
    }
    if let Some(g) = &gor.generator {
        if !annihilator_is_zero(g, a)? {
            return Err(CbpError::Inconsistent("Gorenstein witness does not generate".into()));
        }
    }
    let field_used = [&gor.pencil.field_used, &gor_cbp.field_used]
        .into_iter()
        .find(|f| *f != a.field())
        .unwrap_or(a.field())
        .clone();
    let report = PropertyReport {
        dim: a.dim(),
        hf: a.hf().to_vec(),
        ri: a.ri(),
        delta: a.delta(),
        castelnuovo: a.castelnuovo(),
        cbp: cbp.holds,
        locally_gorenstein: gor.holds,
        gor_and_cbp: gor_cbp.nonzero,
        strict_cbp,
        strict_gorenstein: strict.holds,
        symmetric_hf: a.is_symmetric_hf(),
        hf_inequality: hf_inequality_check(a),
        cbp_kernel_witness: cbp.kernel_witness,
        generator: gor.generator,
        gorenstein_witness: gor.pencil.witness,
        gor_cbp_witness: gor_cbp.witness,
        det_c: gor.pencil.determinant,
        det_c0: gor_cbp.determinant,
        field_used,
    };
    report.check_coherence()?;
    Ok(report)
}
