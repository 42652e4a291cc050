//! Exact dense linear algebra over a [`FieldSpec`].

mod bareiss;
mod pencil;

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::field::{Embedding, FieldElement, FieldError, FieldSpec};

pub use bareiss::{bareiss_det, ExactDomain, FieldDomain, IntegerDomain, PolynomialDomain};
pub use pencil::{DetMode, LinearPencil, PencilOptions, PencilVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("no extension of {field} with at least {needed} elements within degree {max_degree}")]
    ExtensionLimit { field: String, needed: u128, max_degree: usize },
    #[error(transparent)]
    Field(#[from] FieldError),
}

/// Row-major matrix with entries in one field.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl fmt::Debug for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "DenseMatrix {}x{} over {}", self.rows, self.cols, self.field)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for DenseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|e| self.field.format(e)).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl DenseMatrix {
    pub fn new(field: &FieldSpec, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        if let Some(bad) = data.iter().find(|e| !field.contains(e)) {
            return Err(FieldError::NotInField(format!("{bad:?}"), field.to_string()).into());
        }
        Ok(DenseMatrix { field: field.clone(), rows, cols, data })
    }

    pub fn zeros(field: &FieldSpec, rows: usize, cols: usize) -> Self {
        DenseMatrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::Shape("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: &FieldSpec, rows: &[&[i64]]) -> Result<Self, LinalgError> {
        Self::from_rows(field, rows.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect())
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: FieldElement) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<FieldElement>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if self.cols != other.rows {
            return Err(LinalgError::Shape(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let v = f.add(out.get(r, c), &f.mul(a, other.get(k, c)));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::Shape(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| {
                self.row(r).iter().zip(v).fold(f.zero(), |acc, (a, b)| f.add(&acc, &f.mul(a, b)))
            })
            .collect())
    }

    pub fn add(&self, other: &DenseMatrix) -> Result<DenseMatrix, LinalgError> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(LinalgError::Shape("sum of differently shaped matrices".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| self.field.add(a, b)).collect();
        Ok(DenseMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scale(&self, c: &FieldElement) -> DenseMatrix {
        let data = self.data.iter().map(|a| self.field.mul(a, c)).collect();
        DenseMatrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// Stacks blocks vertically.
    pub fn vstack(blocks: &[DenseMatrix]) -> Result<DenseMatrix, LinalgError> {
        let first = blocks.first().ok_or_else(|| LinalgError::Shape("empty block list".into()))?;
        if blocks.iter().any(|b| b.cols != first.cols) {
            return Err(LinalgError::Shape("blocks with different column counts".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let data = blocks.iter().flat_map(|b| b.data.iter().cloned()).collect();
        Ok(DenseMatrix { field: first.field.clone(), rows, cols: first.cols, data })
    }

    pub fn map_field(&self, emb: &Embedding) -> DenseMatrix {
        DenseMatrix {
            field: emb.target().clone(),
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| emb.apply(a)).collect(),
        }
    }

    /// Reduced row echelon form and pivot columns. The pivot in each column
    /// is the first row at or below the current one with a nonzero entry.
    pub fn rref(&self) -> (DenseMatrix, Vec<usize>) {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in c..self.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = m.get(i, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for j in c..self.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// A basis of the right kernel, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let (m, pivots) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m.get(r, free));
            }
            out.push(v);
        }
        out
    }

    /// Determinant by fraction-free elimination. Over Q the rows are first
    /// scaled to integers so Bareiss runs on integers.
    pub fn det(&self) -> Result<FieldElement, LinalgError> {
        if !self.is_square() {
            return Err(LinalgError::Shape(format!("determinant of a {}x{} matrix", self.rows, self.cols)));
        }
        match &self.field {
            FieldSpec::Rationals => {
                let mut scale = BigInt::one();
                let mut rows = Vec::with_capacity(self.rows);
                for r in 0..self.rows {
                    let entries: Vec<_> =
                        self.row(r).iter().map(|e| self.field.as_rational(e).unwrap().clone()).collect();
                    let l = entries.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
                    rows.push(entries.iter().map(|q| q.numer() * (&l / q.denom())).collect::<Vec<_>>());
                    scale *= l;
                }
                let d = bareiss_det(&IntegerDomain, rows);
                if d.is_zero() {
                    return Ok(self.field.zero());
                }
                let (num, den) = if scale.is_negative() { (-d, -scale) } else { (d, scale) };
                Ok(self.field.from_ratio(&num, &den)?)
            }
            _ => Ok(bareiss_det(&FieldDomain(self.field.clone()), self.to_rows())),
        }
    }
}
