//! Buchberger's algorithm over the rationals in lex order, used as an
//! independent check on the integral rewriting normal forms.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polyring::{Monomial, MultiPoly};
use crate::quotient::RingSpec;

pub const MAX_VARS: usize = 5;

/// Sparse polynomial over the rationals; keys in lex order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RatPoly {
    pub fn zero(nvars: usize) -> RatPoly {
        RatPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn from_int(f: &MultiPoly) -> RatPoly {
        let terms = f.terms().map(|(m, c)| (m.clone(), BigRational::from_integer(c.clone()))).collect();
        RatPoly { nvars: f.nvars(), terms }
    }

    /// Back to integer coefficients, if all are integral.
    pub fn to_int(&self) -> Option<MultiPoly> {
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            if !c.is_integer() {
                return None;
            }
            out.add_term(m.clone(), c.to_integer());
        }
        Some(out)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.last_key_value()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self -= c * x^m * other`
    fn sub_scaled_shift(&mut self, other: &RatPoly, m: &[u32], c: &BigRational) {
        for (e, a) in &other.terms {
            let shifted: Monomial = e.iter().zip(m).map(|(x, y)| x + y).collect();
            self.add_term(shifted, -(a * c));
        }
    }

    fn monic(&self) -> RatPoly {
        let Some((_, lc)) = self.leading() else {
            return self.clone();
        };
        let inv = lc.recip();
        RatPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * &inv)).collect() }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }
}

fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn lcm(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn quotient_monomial(a: &[u32], b: &[u32]) -> Monomial {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Full reduction of `f` modulo `basis`; the remainder has no term divisible by a leading term.
pub fn reduce(f: &RatPoly, basis: &[RatPoly]) -> RatPoly {
    let mut work = f.clone();
    let mut rem = RatPoly::zero(f.nvars);
    while let Some((m, c)) = work.terms.pop_last() {
        let divisor = basis.iter().find(|g| g.leading().is_some_and(|(lm, _)| divides(lm, &m)));
        match divisor {
            None => rem.add_term(m, c),
            Some(g) => {
                let (lm, lc) = g.leading().expect("nonzero");
                let shift = quotient_monomial(&m, lm);
                let factor = &c / lc;
                let mut g_tail = g.clone();
                g_tail.terms.pop_last();
                work.sub_scaled_shift(&g_tail, &shift, &factor);
            }
        }
    }
    rem
}

fn s_polynomial(f: &RatPoly, g: &RatPoly) -> RatPoly {
    let (lf, cf) = f.leading().expect("nonzero");
    let (lg, cg) = g.leading().expect("nonzero");
    let l = lcm(lf, lg);
    let mut out = RatPoly::zero(f.nvars);
    out.sub_scaled_shift(f, &quotient_monomial(&l, lf), &-cf.recip());
    out.sub_scaled_shift(g, &quotient_monomial(&l, lg), &cg.recip());
    out
}

/// Reduced lex Groebner basis of the ideal generated by `gens`.
pub fn buchberger(gens: &[RatPoly]) -> Vec<RatPoly> {
    let mut basis: Vec<RatPoly> = gens.iter().filter(|g| !g.is_zero()).map(RatPoly::monic).collect();
    let mut pairs: Vec<(usize, usize)> =
        (0..basis.len()).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    while let Some((i, j)) = pairs.pop() {
        let (li, lj) = (basis[i].leading().expect("nonzero").0, basis[j].leading().expect("nonzero").0);
        if li.iter().zip(lj).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        let r = reduce(&s_polynomial(&basis[i], &basis[j]), &basis);
        if !r.is_zero() {
            let idx = basis.len();
            basis.push(r.monic());
            pairs.extend((0..idx).map(|i| (i, idx)));
        }
    }
    // Minimalize, then interreduce.
    let mut minimal: Vec<RatPoly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lg = g.leading().expect("nonzero").0;
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            let lh = h.leading().expect("nonzero").0;
            j != i && divides(lh, lg) && (lh != lg || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<RatPoly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let (lm, _) = minimal[i].leading().expect("nonzero");
        let mut tail = minimal[i].clone();
        let lead = tail.terms.pop_last().expect("nonzero");
        let mut g = reduce(&tail, &others);
        g.add_term(lm.clone(), lead.1);
        reduced.push(g.monic());
    }
    reduced.sort_by(|a, b| a.leading().expect("nonzero").0.cmp(b.leading().expect("nonzero").0));
    reduced
}

/// Cached reduced Groebner basis of a ring's defining ideal.
#[derive(Debug)]
pub struct GroebnerOracle {
    spec: RingSpec,
    basis: Vec<RatPoly>,
}

fn cache() -> &'static Mutex<HashMap<RingSpec, Arc<GroebnerOracle>>> {
    static CACHE: OnceLock<Mutex<HashMap<RingSpec, Arc<GroebnerOracle>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn groebner_oracle(spec: RingSpec) -> Result<Arc<GroebnerOracle>> {
    let spec = spec.validated()?;
    if spec.n() > MAX_VARS {
        return Err(Error::Budget { needed: spec.n() as u128, limit: MAX_VARS as u128 });
    }
    if let Some(o) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&spec) {
        return Ok(o.clone());
    }
    let gens: Vec<RatPoly> = spec.generators().iter().map(RatPoly::from_int).collect();
    let oracle = Arc::new(GroebnerOracle { spec, basis: buchberger(&gens) });
    Ok(cache().lock().unwrap_or_else(|e| e.into_inner()).entry(spec).or_insert(oracle).clone())
}

impl GroebnerOracle {
    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn basis(&self) -> &[RatPoly] {
        &self.basis
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|g| g.leading().expect("nonzero").0.clone()).collect()
    }

    pub fn is_standard(&self, m: &[u32]) -> bool {
        !self.basis.iter().any(|g| divides(g.leading().expect("nonzero").0, m))
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<RatPoly> {
        if f.nvars() != self.spec.n() {
            return Err(Error::Param(format!("{}-variable polynomial in {}", f.nvars(), self.spec)));
        }
        Ok(reduce(&RatPoly::from_int(f), &self.basis))
    }

    /// Standard monomials, found by scanning exponents below the largest pure power in the basis.
    pub fn standard_monomials(&self) -> Vec<Monomial> {
        let n = self.spec.n();
        let bounds: Vec<u32> = (0..n)
            .map(|i| {
                self.leading_monomials()
                    .iter()
                    .filter(|m| m.iter().enumerate().all(|(j, &e)| (j == i) == (e > 0)))
                    .map(|m| m[i])
                    .min()
                    .expect("zero-dimensional ideal has a pure power of every variable")
            })
            .collect();
        let mut out = Vec::new();
        let mut cur = vec![0u32; n];
        loop {
            if self.is_standard(&cur) {
                out.push(cur.clone());
            }
            let mut i = n;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] < bounds[i] {
                    break;
                }
                cur[i] = 0;
            }
        }
    }
}

/// Integer coefficients as a `MultiPoly`, for comparisons with the rewriting path.
pub fn rat_to_int(f: &RatPoly) -> Result<MultiPoly> {
    f.to_int().ok_or_else(|| Error::Inexact("non-integral oracle normal form".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quotient::standard_monomial_basis;

    #[test]
    fn r22_oracle() {
        let o = groebner_oracle(RingSpec::r(2, 2).unwrap()).unwrap();
        assert_eq!(o.standard_monomials(), vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn r32_agrees_with_skip_basis() {
        let spec = RingSpec::r(3, 2).unwrap();
        let o = groebner_oracle(spec).unwrap();
        assert_eq!(o.standard_monomials(), standard_monomial_basis(&spec));
    }

    #[test]
    fn size_guard() {
        assert!(matches!(groebner_oracle(RingSpec::r(6, 2).unwrap()), Err(Error::Budget { .. })));
    }
}
