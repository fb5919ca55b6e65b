//! Sparse multivariate polynomials over the integers with the lexicographic term order.
//!
//! A monomial is its exponent vector; `Vec` ordering on exponent vectors is
//! exactly lex order with `x_1 > x_2 > ... > x_n`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::words::Perm;

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        MultiPoly::constant(nvars, BigInt::one())
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        MultiPoly::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Monomial, c: impl Into<BigInt>) -> Self {
        let mut p = MultiPoly::zero(exps.len());
        p.add_term(exps, c.into());
        p
    }

    /// The variable `x_i`, `1 <= i <= nvars`.
    pub fn var(nvars: usize, i: usize) -> Self {
        assert!(i >= 1 && i <= nvars, "x_{i} outside x_1..x_{nvars}");
        let mut e = vec![0; nvars];
        e[i - 1] = 1;
        MultiPoly::monomial(e, 1)
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero(nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "exponent vector length");
            p.add_term(m, c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_zero()
    }

    /// Terms in lex-descending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &[u32]) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        debug_assert_eq!(m.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Remove and return the lex-largest term.
    pub fn pop_leading(&mut self) -> Option<(Monomial, BigInt)> {
        self.terms.pop_last()
    }

    pub fn lex_leading(&self) -> Result<(Monomial, BigInt)> {
        self.terms
            .last_key_value()
            .map(|(m, c)| (m.clone(), c.clone()))
            .ok_or_else(|| Error::Param("leading term of the zero polynomial".into()))
    }

    /// Largest total degree, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.iter().sum()).max()
    }

    /// `Some(d)` when every term has total degree `d`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// `c * x^m * self`
    pub fn mul_term(&self, m: &[u32], c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.nvars);
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, a)| (e.iter().zip(m).map(|(x, y)| x + y).collect(), a * c))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// `self += c * x^m * other`
    pub fn add_scaled_shift(&mut self, other: &MultiPoly, m: &[u32], c: &BigInt) {
        for (e, a) in &other.terms {
            let shifted: Monomial = e.iter().zip(m).map(|(x, y)| x + y).collect();
            self.add_term(shifted, a * c);
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        (0..e).fold(MultiPoly::one(self.nvars), |acc, _| &acc * self)
    }

    /// Append variables that do not occur.
    pub fn extend_vars(&self, nvars: usize) -> MultiPoly {
        assert!(nvars >= self.nvars);
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.clone();
                e.resize(nvars, 0);
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars, terms }
    }

    /// Drop trailing variables, which must not occur.
    pub fn truncate_vars(&self, nvars: usize) -> Result<MultiPoly> {
        if nvars >= self.nvars {
            return Ok(self.extend_vars(nvars));
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m[nvars..].iter().any(|&x| x > 0) {
                return Err(Error::Param(format!("polynomial involves variables beyond x_{nvars}")));
            }
            terms.insert(m[..nvars].to_vec(), c.clone());
        }
        Ok(MultiPoly { nvars, terms })
    }

    /// Set `x_i = 0`, keeping the number of variables.
    pub fn set_zero(&self, i: usize) -> MultiPoly {
        let terms = self.terms.iter().filter(|(m, _)| m[i - 1] == 0).map(|(m, c)| (m.clone(), c.clone())).collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// `x_i -> x_{n+1-i}`
    pub fn reverse_vars(&self) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (m.iter().rev().copied().collect(), c.clone()))
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// Substitution `x_i -> x_{p(i)}`. This is a left action:
    /// `act(pq, f) = act(p, act(q, f))`.
    pub fn act(&self, p: &Perm) -> Result<MultiPoly> {
        if p.len() != self.nvars {
            return Err(Error::Perm(format!("S_{} acting on {} variables", p.len(), self.nvars)));
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = vec![0; self.nvars];
                for (i, &x) in m.iter().enumerate() {
                    e[p.images()[i] - 1] = x;
                }
                (e, c.clone())
            })
            .collect();
        Ok(MultiPoly { nvars: self.nvars, terms })
    }

    /// `s_i f`: exchange `x_i` and `x_{i+1}`.
    pub fn swap_vars(&self, i: usize) -> MultiPoly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.clone();
                e.swap(i - 1, i);
                (e, c.clone())
            })
            .collect();
        MultiPoly { nvars: self.nvars, terms }
    }

    /// `(f - s_i f) / (x_i - x_{i+1})`, computed term by term.
    pub fn divided_difference(&self, i: usize) -> Result<MultiPoly> {
        if i == 0 || i >= self.nvars {
            return Err(Error::Param(format!("divided difference d_{i} in {} variables", self.nvars)));
        }
        let (a_idx, b_idx) = (i - 1, i);
        let mut out = MultiPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let (a, b) = (m[a_idx], m[b_idx]);
            if a == b {
                continue;
            }
            let (lo, hi, sign) = if a > b { (b, a, 1) } else { (a, b, -1) };
            let c = if sign > 0 { c.clone() } else { -c };
            let top = hi - lo - 1;
            for j in 0..=top {
                let mut e = m.clone();
                if sign > 0 {
                    e[a_idx] = lo + top - j;
                    e[b_idx] = lo + j;
                } else {
                    e[a_idx] = lo + j;
                    e[b_idx] = lo + top - j;
                }
                out.add_term(e, c.clone());
            }
        }
        Ok(out)
    }

    /// Isobaric divided difference `f -> d_i(x_i f)`.
    pub fn isobaric(&self, i: usize) -> Result<MultiPoly> {
        let mut e = vec![0; self.nvars];
        e[i - 1] = 1;
        self.mul_term(&e, &BigInt::one()).divided_difference(i)
    }

    /// Exact division by `x_i - x_j`; fails on a nonzero remainder.
    pub fn div_by_difference(&self, i: usize, j: usize) -> Result<MultiPoly> {
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.nvars);
        let (a, b) = (i.min(j) - 1, i.max(j) - 1);
        let sign = if i < j { BigInt::one() } else { -BigInt::one() };
        while let Some((m, c)) = rem.terms.last_key_value().map(|(m, c)| (m.clone(), c.clone())) {
            if m[a] == 0 {
                return Err(Error::Inexact(format!("{self} / (x{i} - x{j})")));
            }
            let mut qm = m.clone();
            qm[a] -= 1;
            let qc = &c * &sign;
            let mut lower = qm.clone();
            lower[b] += 1;
            rem.add_term(m, -c.clone());
            rem.add_term(lower, &qc * &sign);
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Parse `"x1^2*x3 - 2x2 + 5"`; the `*` between factors is optional.
    pub fn parse(s: &str, nvars: usize) -> Result<MultiPoly> {
        let bad = |msg: &str| Error::Parse(format!("{msg} in polynomial {s:?}"));
        let chars: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut pos = 0;
        let mut out = MultiPoly::zero(nvars);
        let read_num = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < chars.len() && chars[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().ok()).flatten()
        };
        if chars.is_empty() {
            return Err(bad("empty input"));
        }
        while pos < chars.len() {
            let mut sign = BigInt::one();
            if chars[pos] == '+' || chars[pos] == '-' {
                if chars[pos] == '-' {
                    sign = -sign;
                }
                pos += 1;
            } else if pos > 0 {
                return Err(bad("expected + or -"));
            }
            let mut coeff = BigInt::one();
            let mut any = false;
            if let Some(c) = read_num(&mut pos) {
                coeff = BigInt::from(c);
                any = true;
            }
            let mut exps = vec![0u32; nvars];
            loop {
                if pos < chars.len() && chars[pos] == '*' {
                    pos += 1;
                }
                if pos < chars.len() && chars[pos] == 'x' {
                    pos += 1;
                    let idx = read_num(&mut pos).ok_or_else(|| bad("missing variable index"))? as usize;
                    if idx == 0 || idx > nvars {
                        return Err(bad("variable index out of range"));
                    }
                    let mut e = 1;
                    if pos < chars.len() && chars[pos] == '^' {
                        pos += 1;
                        e = read_num(&mut pos).ok_or_else(|| bad("missing exponent"))? as u32;
                    }
                    exps[idx - 1] += e;
                    any = true;
                } else {
                    break;
                }
            }
            if !any {
                return Err(bad("empty term"));
            }
            out.add_term(exps, sign * coeff);
        }
        Ok(out)
    }

    /// LaTeX rendering in the `x_{i}` convention.
    pub fn to_latex(&self) -> String {
        self.render(|i, e| if e == 1 { format!("x_{{{i}}}") } else { format!("x_{{{i}}}^{{{e}}}") }, "")
    }

    /// Plain rendering with caller-supplied variable names, `names[i]` for variable `i + 1`.
    pub fn display_with(&self, names: &[String]) -> String {
        self.render(|i, e| if e == 1 { names[i - 1].clone() } else { format!("{}^{e}", names[i - 1]) }, "*")
    }

    /// LaTeX rendering with caller-supplied variable names.
    pub fn latex_with(&self, names: &[String]) -> String {
        self.render(|i, e| if e == 1 { names[i - 1].clone() } else { format!("{}^{{{e}}}", names[i - 1]) }, "")
    }

    fn render(&self, factor: impl Fn(usize, u32) -> String, sep: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (idx, (m, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let abs = c.abs();
            let factors: Vec<String> =
                m.iter().enumerate().filter(|(_, &e)| e > 0).map(|(i, &e)| factor(i + 1, e)).collect();
            if factors.is_empty() {
                s.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    s.push_str(&abs.to_string());
                    s.push_str(sep);
                }
                s.push_str(&factors.join(sep));
            }
        }
        s
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.render(|i, e| if e == 1 { format!("x{i}") } else { format!("x{i}^{e}") }, "*");
        f.write_str(&s)
    }
}

/// JSON: list of `[exponents, "coefficient"]`, lex-descending.
impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.len()))?;
        for (m, c) in self.terms() {
            seq.serialize_element(&(m, c.to_string()))?;
        }
        seq.end()
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.scale(&-BigInt::one())
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        assert_eq!(self.nvars, rhs.nvars, "variable count mismatch");
        let mut acc: HashMap<Monomial, BigInt> = HashMap::with_capacity(self.len() * rhs.len());
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m: Monomial = a.iter().zip(b).map(|(x, y)| x + y).collect();
                *acc.entry(m).or_default() += ca * cb;
            }
        }
        MultiPoly { nvars: self.nvars, terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MultiPoly {
            type Output = MultiPoly;
            fn $m(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

fn subsets(vars: &[usize], d: usize, start: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
    if cur.len() == d {
        f(cur);
        return;
    }
    for i in start..vars.len() {
        cur.push(vars[i]);
        subsets(vars, d, i + 1, cur, f);
        cur.pop();
    }
}

/// `e_d` in the variables `vars` (1-based indices) of an `nvars`-variable ring.
pub fn elem_sym(d: usize, vars: &[usize], nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    if d > vars.len() {
        return out;
    }
    subsets(vars, d, 0, &mut Vec::new(), &mut |s| {
        let mut e = vec![0; nvars];
        for &i in s {
            e[i - 1] += 1;
        }
        out.add_term(e, BigInt::one());
    });
    out
}

/// `h_d` in the variables `vars` (1-based indices) of an `nvars`-variable ring.
pub fn complete_sym(d: usize, vars: &[usize], nvars: usize) -> MultiPoly {
    let mut out = MultiPoly::zero(nvars);
    if vars.is_empty() {
        if d == 0 {
            out = MultiPoly::one(nvars);
        }
        return out;
    }
    fn rec(vars: &[usize], d: u32, e: &mut Vec<u32>, out: &mut MultiPoly) {
        if vars.len() == 1 {
            e[vars[0] - 1] += d;
            out.add_term(e.clone(), BigInt::one());
            e[vars[0] - 1] -= d;
            return;
        }
        for a in 0..=d {
            e[vars[0] - 1] += a;
            rec(&vars[1..], d - a, e, out);
            e[vars[0] - 1] -= a;
        }
    }
    rec(vars, d as u32, &mut vec![0; nvars], &mut out);
    out
}

fn demazure_cache() -> &'static RwLock<HashMap<Vec<u32>, MultiPoly>> {
    static CACHE: OnceLock<RwLock<HashMap<Vec<u32>, MultiPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Key polynomial `kappa_gamma`: `x^gamma` for weakly decreasing `gamma`, and
/// `kappa_gamma = pi_i kappa_{s_i gamma}` when `gamma_i < gamma_{i+1}`.
pub fn demazure_char(gamma: &[u32]) -> MultiPoly {
    if let Some(p) = demazure_cache().read().unwrap_or_else(|e| e.into_inner()).get(gamma) {
        return p.clone();
    }
    let out = match (1..gamma.len()).find(|&i| gamma[i - 1] < gamma[i]) {
        None => MultiPoly::monomial(gamma.to_vec(), 1),
        Some(i) => {
            let mut sorted = gamma.to_vec();
            sorted.swap(i - 1, i);
            demazure_char(&sorted).isobaric(i).expect("index in range")
        }
    };
    demazure_cache().write().unwrap_or_else(|e| e.into_inner()).insert(gamma.to_vec(), out.clone());
    out
}
