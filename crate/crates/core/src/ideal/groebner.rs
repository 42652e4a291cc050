//! Buchberger's algorithm with the normal selection strategy.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::poly::{Ambient, Monomial, Polynomial, TermOrdering};

/// A reduced, monic Gröbner basis sorted ascending by leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    ambient: Arc<Ambient>,
    ordering: TermOrdering,
    gens: Vec<Polynomial>,
}

impl GroebnerBasis {
    /// Runs Buchberger on `input` and returns the reduced basis.
    pub fn compute(ambient: &Arc<Ambient>, input: &[Polynomial], ordering: TermOrdering) -> Self {
        let mut g: Vec<Polynomial> = Vec::new();
        let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
        let mut seed: Vec<Polynomial> = input
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| f.with_ordering(ordering).monic())
            .collect();
        seed.sort_by(|a, b| ordering.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));

        for f in seed {
            let h = reduce_full(&f, &g);
            if !h.is_zero() {
                add_member(&mut g, &mut pairs, h.monic());
            }
        }

        while let Some((i, j)) = select_pair(&g, &pairs, ordering) {
            pairs.remove(&(i, j));
            let lmi = g[i].leading_monomial().unwrap();
            let lmj = g[j].leading_monomial().unwrap();
            if lmi.is_coprime(lmj) || chain_criterion(&g, &pairs, i, j) {
                continue;
            }
            let s = s_polynomial(&g[i], &g[j]);
            let h = reduce_full(&s, &g);
            if !h.is_zero() {
                add_member(&mut g, &mut pairs, h.monic());
            }
        }

        GroebnerBasis::from_groebner_set(ambient, g, ordering)
    }

    /// Minimalizes and inter-reduces a set already known to be a Gröbner basis.
    fn from_groebner_set(ambient: &Arc<Ambient>, g: Vec<Polynomial>, ordering: TermOrdering) -> Self {
        let mut minimal: Vec<Polynomial> = Vec::new();
        for (i, f) in g.iter().enumerate() {
            let lm = f.leading_monomial().unwrap();
            let redundant = g.iter().enumerate().any(|(k, h)| {
                let lk = h.leading_monomial().unwrap();
                k != i && lk.divides(lm) && (lk != lm || k < i)
            });
            if !redundant {
                minimal.push(f.clone());
            }
        }
        let mut reduced: Vec<Polynomial> = Vec::with_capacity(minimal.len());
        for i in 0..minimal.len() {
            let others: Vec<Polynomial> =
                minimal.iter().enumerate().filter(|(k, _)| *k != i).map(|(_, f)| f.clone()).collect();
            // the leading term survives because no other leading monomial divides it
            reduced.push(reduce_full(&minimal[i], &others).monic());
        }
        reduced.sort_by(|a, b| ordering.compare(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        GroebnerBasis { ambient: ambient.clone(), ordering, gens: reduced }
    }

    pub fn ambient(&self) -> &Arc<Ambient> {
        &self.ambient
    }

    pub fn ordering(&self) -> TermOrdering {
        self.ordering
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn leading_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.gens.iter().map(|g| g.leading_monomial().unwrap())
    }

    /// Whether the basis generates the whole ring.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_constant()
    }

    /// The remainder of `f` on division by the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        reduce_full(&f.with_ordering(self.ordering), &self.gens)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Every variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        let n = self.ambient.nvars();
        let mut seen = vec![false; n];
        for m in self.leading_monomials() {
            if let Some(i) = m.pure_power_of() {
                seen[i] = true;
            }
        }
        self.is_unit() || seen.iter().all(|&s| s)
    }

    /// Monomials outside the leading-term ideal, ascending in the basis
    /// ordering; `None` if there are infinitely many.
    pub fn standard_monomials(&self) -> Option<Vec<Monomial>> {
        if !self.is_zero_dimensional() {
            return None;
        }
        let n = self.ambient.nvars();
        let lms: Vec<&Monomial> = self.leading_monomials().collect();
        let mut out = Vec::new();
        if self.is_unit() {
            return Some(out);
        }
        // walk the order ideal by depth-first search over exponent vectors
        let mut stack = vec![Monomial::one(n)];
        let mut seen = std::collections::HashSet::new();
        while let Some(m) = stack.pop() {
            if !seen.insert(m.clone()) || lms.iter().any(|l| l.divides(&m)) {
                continue;
            }
            for i in 0..n {
                stack.push(m.mul(&Monomial::var(n, i)));
            }
            out.push(m);
        }
        out.sort_by(|a, b| self.ordering.compare(a, b));
        Some(out)
    }

    /// `dim_K(P/I)` for a zero-dimensional ideal.
    pub fn quotient_dimension(&self) -> Option<usize> {
        self.standard_monomials().map(|v| v.len())
    }
}

fn add_member(g: &mut Vec<Polynomial>, pairs: &mut BTreeSet<(usize, usize)>, h: Polynomial) {
    let j = g.len();
    g.push(h);
    for i in 0..j {
        pairs.insert((i, j));
    }
}

fn pair_lcm(g: &[Polynomial], i: usize, j: usize) -> Monomial {
    g[i].leading_monomial().unwrap().lcm(g[j].leading_monomial().unwrap())
}

/// Normal strategy: smallest lcm first, ties broken by the newer index then
/// the older one.
fn select_pair(
    g: &[Polynomial],
    pairs: &BTreeSet<(usize, usize)>,
    ordering: TermOrdering,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), Monomial)> = None;
    for &(i, j) in pairs {
        let l = pair_lcm(g, i, j);
        let better = match &best {
            None => true,
            Some(((bi, bj), bl)) => match ordering.compare(&l, bl) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => (j, i) < (*bj, *bi),
            },
        };
        if better {
            best = Some(((i, j), l));
        }
    }
    best.map(|(p, _)| p)
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Buchberger's second criterion: some other member's leading monomial
/// divides the lcm and both of its pairs with `i`, `j` are already done.
fn chain_criterion(g: &[Polynomial], pairs: &BTreeSet<(usize, usize)>, i: usize, j: usize) -> bool {
    let l = pair_lcm(g, i, j);
    (0..g.len()).any(|k| {
        k != i
            && k != j
            && g[k].leading_monomial().unwrap().divides(&l)
            && !pairs.contains(&ordered(i, k))
            && !pairs.contains(&ordered(j, k))
    })
}

fn s_polynomial(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let lf = f.leading_monomial().unwrap();
    let lg = g.leading_monomial().unwrap();
    let l = lf.lcm(lg);
    let a = lf.quotient_of(&l).unwrap();
    let b = lg.quotient_of(&l).unwrap();
    // both inputs are monic
    let minus_one = f.field().neg(&f.field().one());
    f.mul_monomial(&a).add_scaled(g, &minus_one, &b)
}

/// Full reduction of `f` by monic `divisors`.
pub(crate) fn reduce_full(f: &Polynomial, divisors: &[Polynomial]) -> Polynomial {
    let field = f.field().clone();
    let mut rest = f.clone();
    let mut remainder = Vec::new();
    while let Some((m, c)) = rest.leading_term() {
        let hit = divisors.iter().find_map(|g| {
            let lm = g.leading_monomial()?;
            lm.quotient_of(m).map(|q| (g, q))
        });
        match hit {
            Some((g, q)) => {
                let lc = g.leading_coefficient().unwrap();
                let coeff = if field.is_one(lc) {
                    c.clone()
                } else {
                    field.div(c, lc).expect("nonzero leading coefficient")
                };
                rest = rest.add_scaled(g, &field.neg(&coeff), &q);
            }
            None => {
                remainder.push((m.clone(), c.clone()));
                rest = rest.tail();
            }
        }
    }
    // terms were emitted in descending order
    Polynomial::from_sorted_terms(f.ambient(), f.ordering(), remainder)
}
