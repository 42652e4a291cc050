use serde::{Deserialize, Serialize};

use cbp_core::cbp::PropertyReport;
use cbp_core::field::{FieldElement, FieldSpec};
use cbp_core::quotient::QuotientAlgebra;
use cbp_core::separator::SeparatorReport;

/// Every key is always present; checks that were not run are `null`.
/// Field elements and polynomials are exact strings.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct JsonReport {
    pub command: String,
    pub field: String,
    pub vars: Vec<String>,
    pub ordering: String,
    pub det_mode: String,
    pub seed: u64,
    pub elapsed_us: u64,
    pub gb_size: Option<usize>,
    pub gb: Option<Vec<String>>,
    pub dim: Option<usize>,
    pub basis: Option<Vec<String>>,
    pub orders: Option<Vec<u32>>,
    pub hf: Option<Vec<usize>>,
    pub ri: Option<usize>,
    pub delta: Option<usize>,
    pub castelnuovo: Option<Vec<usize>>,
    pub cbp: Option<bool>,
    pub cbp_kernel_witness: Option<Vec<String>>,
    pub locally_gorenstein: Option<bool>,
    pub generator: Option<Vec<String>>,
    pub gorenstein_witness: Option<Vec<String>>,
    pub det_c: Option<String>,
    pub gor_and_cbp: Option<bool>,
    pub gor_cbp_witness: Option<Vec<String>>,
    pub det_c0: Option<String>,
    pub field_used: Option<String>,
    pub strict_cbp: Option<bool>,
    pub strict_gorenstein: Option<bool>,
    pub strict_gorenstein_via_cbp_and_symmetry: Option<bool>,
    pub strict_gorenstein_via_strict_cbp: Option<bool>,
    pub symmetric_hf: Option<bool>,
    pub hf_inequality: Option<bool>,
    pub separators: Option<SeparatorJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SeparatorJson {
    pub cbp: bool,
    pub components: Vec<ComponentJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComponentJson {
    pub index: usize,
    pub ell: usize,
    pub m: usize,
    pub k: usize,
    pub rank: usize,
    pub max_sepdeg: bool,
    pub sepdeg: Option<u32>,
}

pub fn elements(field: &FieldSpec, v: &[FieldElement]) -> Vec<String> {
    v.iter().map(|e| field.format(e)).collect()
}

impl JsonReport {
    pub fn set_algebra(&mut self, a: &QuotientAlgebra) {
        self.dim = Some(a.dim());
        self.basis = Some(a.basis_strings());
        self.orders = Some(a.orders().to_vec());
        self.hf = Some(a.hf().to_vec());
        self.ri = Some(a.ri());
        self.delta = Some(a.delta());
        self.castelnuovo = Some(a.castelnuovo());
    }

    pub fn set_properties(&mut self, r: &PropertyReport, base: &FieldSpec) {
        self.cbp = Some(r.cbp);
        self.cbp_kernel_witness = r.cbp_kernel_witness.as_ref().map(|w| elements(base, w));
        self.locally_gorenstein = Some(r.locally_gorenstein);
        self.generator = r.generator.as_ref().map(|g| elements(base, &g.coeffs));
        self.gorenstein_witness = r.gorenstein_witness.as_ref().map(|w| elements(&r.field_used, w));
        self.det_c = r.det_c.as_ref().map(|d| d.to_string());
        self.gor_and_cbp = Some(r.gor_and_cbp);
        self.gor_cbp_witness = r.gor_cbp_witness.as_ref().map(|w| elements(&r.field_used, w));
        self.det_c0 = r.det_c0.as_ref().map(|d| d.to_string());
        self.field_used = Some(r.field_used.to_string());
        self.strict_cbp = Some(r.strict_cbp);
        self.strict_gorenstein = Some(r.strict_gorenstein);
        self.symmetric_hf = Some(r.symmetric_hf);
        self.hf_inequality = Some(r.hf_inequality);
    }

    pub fn set_separators(&mut self, s: &SeparatorReport) {
        self.separators = Some(SeparatorJson {
            cbp: s.holds,
            components: s
                .components
                .iter()
                .map(|c| ComponentJson {
                    index: c.index,
                    ell: c.ell,
                    m: c.m,
                    k: c.k,
                    rank: c.rank,
                    max_sepdeg: c.max_sepdeg,
                    sepdeg: c.sepdeg,
                })
                .collect(),
        });
    }
}
