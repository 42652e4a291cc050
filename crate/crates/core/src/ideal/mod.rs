//! Ideals of a polynomial ring: Gröbner bases and ideal arithmetic.

mod groebner;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use thiserror::Error;

use crate::poly::{Ambient, ParseError, PolyError, Polynomial, TermOrdering};

pub use groebner::GroebnerBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdealError {
    #[error("colon by the zero ideal")]
    ZeroColon,
    #[error("ideals live in different rings")]
    AmbientMismatch,
    #[error("the ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

struct Inner {
    ambient: Arc<Ambient>,
    gens: Vec<Polynomial>,
    cache: Mutex<HashMap<TermOrdering, Arc<GroebnerBasis>>>,
}

/// An ideal given by generators, with Gröbner bases computed on demand and
/// cached per term ordering. Cloning is cheap and shares the cache.
#[derive(Clone)]
pub struct IdealHandle {
    inner: Arc<Inner>,
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.inner.gens.iter().map(|g| g.to_string())).finish()
    }
}

impl IdealHandle {
    /// Zero generators are dropped.
    pub fn new(ambient: &Arc<Ambient>, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        IdealHandle {
            inner: Arc::new(Inner {
                ambient: ambient.clone(),
                gens,
                cache: Mutex::new(HashMap::new()),
            }),
        }
    }

    /// Parses each string as one generator.
    pub fn parse<S: AsRef<str>>(ambient: &Arc<Ambient>, gens: &[S]) -> Result<Self, IdealError> {
        let polys = gens
            .iter()
            .map(|s| Polynomial::parse(s.as_ref(), ambient, TermOrdering::DegRevLex))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealHandle::new(ambient, polys))
    }

    fn from_basis(basis: GroebnerBasis) -> Self {
        let ambient = basis.ambient().clone();
        let ordering = basis.ordering();
        let h = IdealHandle::new(&ambient, basis.gens().to_vec());
        h.inner.cache.lock().unwrap().insert(ordering, Arc::new(basis));
        h
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.inner.ambient
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.inner.gens
    }

    /// The reduced Gröbner basis for `ordering`. Computation for a missing
    /// ordering happens under the cache lock, so it runs once per handle.
    pub fn gb(&self, ordering: TermOrdering) -> Arc<GroebnerBasis> {
        let mut cache = self.inner.cache.lock().unwrap();
        cache
            .entry(ordering)
            .or_insert_with(|| Arc::new(GroebnerBasis::compute(&self.inner.ambient, &self.inner.gens, ordering)))
            .clone()
    }

    pub fn drl(&self) -> Arc<GroebnerBasis> {
        self.gb(TermOrdering::DegRevLex)
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.drl().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.drl().contains(f)
    }

    pub fn is_unit(&self) -> bool {
        self.drl().is_unit()
    }

    pub fn is_zero_dimensional(&self) -> bool {
        self.drl().is_zero_dimensional()
    }

    /// `dim_K(P/I)`, or `None` when infinite.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.drl().quotient_dimension()
    }

    fn check_ambient(&self, other: &IdealHandle) -> Result<(), IdealError> {
        if self.ambient() == other.ambient() {
            Ok(())
        } else {
            Err(IdealError::AmbientMismatch)
        }
    }

    pub fn is_subset_of(&self, other: &IdealHandle) -> Result<bool, IdealError> {
        self.check_ambient(other)?;
        let g = other.drl();
        Ok(self.gens().iter().all(|f| g.contains(f)))
    }

    pub fn equals(&self, other: &IdealHandle) -> Result<bool, IdealError> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    pub fn sum(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        self.check_ambient(other)?;
        Ok(IdealHandle::new(self.ambient(), self.gens().iter().chain(other.gens()).cloned()))
    }

    pub fn product(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        self.check_ambient(other)?;
        let gens = self.gens().iter().flat_map(|f| other.gens().iter().map(move |g| f.mul(g)));
        Ok(IdealHandle::new(self.ambient(), gens.collect::<Vec<_>>()))
    }

    /// `I ∩ J` as the `t`-free part of `t·I + (1 − t)·J`, with `t` appended
    /// as the last variable and eliminated by a block ordering.
    pub fn intersection(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        self.check_ambient(other)?;
        let ambient = self.ambient();
        if self.gens().is_empty() || other.gens().is_empty() {
            return Ok(IdealHandle::new(ambient, []));
        }
        let big = ambient.with_extra_vars(&["_t"]);
        let elim = TermOrdering::Elimination { tail: 1 };
        let n = ambient.nvars();
        let t = Polynomial::var(&big, elim, n);
        let one_minus_t = Polynomial::one(&big, elim).sub(&t);
        let mut gens = Vec::new();
        for f in self.gens() {
            gens.push(f.extend_vars(&big, elim).mul(&t));
        }
        for g in other.gens() {
            gens.push(g.extend_vars(&big, elim).mul(&one_minus_t));
        }
        let gb = GroebnerBasis::compute(&big, &gens, elim);
        let kept: Vec<Polynomial> = gb
            .gens()
            .iter()
            .filter_map(|g| g.truncate_vars(ambient, TermOrdering::DegRevLex))
            .collect();
        // the t-free part of an elimination basis is a DegRevLex basis of
        // the intersection; re-reduce so the cached basis is canonical
        let basis = GroebnerBasis::compute(ambient, &kept, TermOrdering::DegRevLex);
        Ok(IdealHandle::from_basis(basis))
    }

    pub fn intersection_all<'a>(
        ideals: impl IntoIterator<Item = &'a IdealHandle>,
    ) -> Result<Option<IdealHandle>, IdealError> {
        let mut acc: Option<IdealHandle> = None;
        for i in ideals {
            acc = Some(match acc {
                None => i.clone(),
                Some(a) => a.intersection(i)?,
            });
        }
        Ok(acc)
    }

    /// `I : J = ⋂_f (I ∩ ⟨f⟩) / f` over the generators `f` of `J`.
    pub fn colon(&self, other: &IdealHandle) -> Result<IdealHandle, IdealError> {
        self.check_ambient(other)?;
        if other.gens().is_empty() {
            return Err(IdealError::ZeroColon);
        }
        let ambient = self.ambient();
        let mut parts = Vec::new();
        for f in other.gens() {
            let principal = IdealHandle::new(ambient, [f.clone()]);
            let meet = self.intersection(&principal)?;
            let quotients = meet
                .gens()
                .iter()
                .map(|g| g.div_exact(&f.with_ordering(g.ordering())).expect("intersection with ⟨f⟩ is divisible by f"))
                .collect::<Vec<_>>();
            parts.push(IdealHandle::new(ambient, quotients));
        }
        Ok(IdealHandle::intersection_all(&parts)?.expect("at least one generator"))
    }

    /// The ideal of degree forms, generated by the degree forms of the
    /// reduced DegRevLex basis.
    pub fn degree_form_ideal(&self) -> Result<IdealHandle, IdealError> {
        let gens = self
            .drl()
            .gens()
            .iter()
            .map(|g| g.degree_form())
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IdealHandle::new(self.ambient(), gens))
    }
}
