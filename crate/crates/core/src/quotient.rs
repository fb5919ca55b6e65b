//! The rings `R_{n,k}`, `R_{n,k,s}` and `T_{n,k,r}` as rewriting systems over the
//! integers.
//!
//! Normal forms are taken with respect to lex order with `x_1 > x_2 > ... > x_n`.
//! A monomial is reduced either by a variable-power relation or by a skip
//! relation `m/x(S) * kappa_{gamma(S)*}(x_n^*)`, whose lex-leading term is `m`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::polyring::{complete_sym, demazure_char, elem_sym, Monomial, MultiPoly};
use crate::qseries::QPoly;
use crate::schubert::schubert_word;
use crate::words::{enumerate_fubini, Perm, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "family")]
pub enum RingSpec {
    R { n: usize, k: usize },
    Rs { n: usize, k: usize, s: usize },
    T { n: usize, k: usize, r: usize },
}

impl RingSpec {
    pub fn r(n: usize, k: usize) -> Result<RingSpec> {
        RingSpec::R { n, k }.validated()
    }

    pub fn rs(n: usize, k: usize, s: usize) -> Result<RingSpec> {
        RingSpec::Rs { n, k, s }.validated()
    }

    pub fn t(n: usize, k: usize, r: usize) -> Result<RingSpec> {
        RingSpec::T { n, k, r }.validated()
    }

    pub fn validated(self) -> Result<RingSpec> {
        let ok = match self {
            RingSpec::R { n, k } => 1 <= k && k <= n,
            RingSpec::Rs { n, k, s } => 1 <= s && s <= k && k <= n,
            RingSpec::T { n, k, r } => n >= 1 && k >= 1 && 1 <= r && r <= n,
        };
        if ok {
            Ok(self)
        } else {
            Err(Error::Param(format!("invalid ring {self}")))
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            RingSpec::R { n, .. } | RingSpec::Rs { n, .. } | RingSpec::T { n, .. } => n,
        }
    }

    /// Size of the skip sets `S` whose monomials `x(S)` lie in the initial ideal.
    pub fn skip_size(&self) -> usize {
        match *self {
            RingSpec::R { n, k } => n - k + 1,
            RingSpec::Rs { n, s, .. } => n - s + 1,
            RingSpec::T { n, r, .. } => n - r + 1,
        }
    }

    /// Exponent at which `x_i` (1-based) is reducible.
    pub fn power_bound(&self, i: usize) -> u32 {
        match *self {
            RingSpec::R { k, .. } | RingSpec::Rs { k, .. } => k as u32,
            RingSpec::T { k, .. } => (k + i) as u32,
        }
    }

    /// The defining generators of the ideal.
    pub fn generators(&self) -> Vec<MultiPoly> {
        let n = self.n();
        let all: Vec<usize> = (1..=n).collect();
        let elementary = |lowest: usize| (lowest..=n).rev().map(|d| elem_sym(d, &all, n)).collect::<Vec<_>>();
        match *self {
            RingSpec::R { k, .. } | RingSpec::Rs { k, .. } => {
                let mut g: Vec<MultiPoly> = (1..=n)
                    .map(|i| {
                        let mut e = vec![0; n];
                        e[i - 1] = k as u32;
                        MultiPoly::monomial(e, 1)
                    })
                    .collect();
                g.extend(elementary(self.skip_size()));
                g
            }
            RingSpec::T { k, .. } => {
                let mut g: Vec<MultiPoly> = (k + 1..=k + n).map(|d| complete_sym(d, &all, n)).collect();
                g.extend(elementary(self.skip_size()));
                g
            }
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::R { n, k } => write!(f, "R({n},{k})"),
            RingSpec::Rs { n, k, s } => write!(f, "Rs({n},{k},{s})"),
            RingSpec::T { n, k, r } => write!(f, "T({n},{k},{r})"),
        }
    }
}

/// `x(S) = x_{s_1}^{s_1} x_{s_2}^{s_2-1} ... x_{s_r}^{s_r-r+1}` for sorted 1-based `S`.
pub fn skip_monomial(s: &[usize], n: usize) -> Result<Monomial> {
    if s.windows(2).any(|p| p[0] >= p[1]) || s.iter().any(|&x| x == 0 || x > n) {
        return Err(Error::Param(format!("{s:?} is not an increasing subset of [1,{n}]")));
    }
    let mut e = vec![0; n];
    for (j, &x) in s.iter().enumerate() {
        e[x - 1] = (x - j) as u32;
    }
    Ok(e)
}

/// `gamma(S)`, the exponent vector of `x(S)`.
pub fn skip_composition(s: &[usize], n: usize) -> Result<Vec<u32>> {
    skip_monomial(s, n)
}

/// `gamma(S)^*`
pub fn reverse_skip_composition(s: &[usize], n: usize) -> Result<Vec<u32>> {
    let mut g = skip_monomial(s, n)?;
    g.reverse();
    Ok(g)
}

/// Leftmost `S` of size `size` with `x(S) | m`.
pub fn find_skip(m: &[u32], size: usize) -> Option<Vec<usize>> {
    if size == 0 {
        return Some(Vec::new());
    }
    let mut s = Vec::with_capacity(size);
    for (idx, &a) in m.iter().enumerate() {
        let i = idx + 1;
        if a as usize + s.len() >= i {
            s.push(i);
            if s.len() == size {
                return Some(s);
            }
        }
    }
    None
}

pub fn is_standard(m: &[u32], spec: &RingSpec) -> bool {
    m.iter().enumerate().all(|(i, &a)| a < spec.power_bound(i + 1)) && find_skip(m, spec.skip_size()).is_none()
}

/// Standard monomials in lex order, smallest first.
pub fn standard_monomial_basis(spec: &RingSpec) -> Vec<Monomial> {
    let n = spec.n();
    let size = spec.skip_size();
    let mut out = Vec::new();
    fn rec(spec: &RingSpec, n: usize, size: usize, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let i = cur.len() + 1;
        for a in 0..spec.power_bound(i) {
            cur.push(a);
            // A skip set inside the prefix stays a skip set.
            let mut padded = cur.clone();
            padded.resize(n, 0);
            if find_skip(&padded, size).is_none() {
                rec(spec, n, size, cur, out);
            }
            cur.pop();
        }
    }
    rec(spec, n, size, &mut Vec::with_capacity(n), &mut out);
    out.sort();
    out
}

/// A ring `Z[x_n]/I` with its standard basis and rewriting data.
#[derive(Debug)]
pub struct Quotient {
    spec: RingSpec,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    skip_reducers: HashMap<Vec<usize>, MultiPoly>,
    power_reducers: Vec<MultiPoly>,
    schubert_inverse: OnceLock<std::result::Result<Arc<SchubertData>, Error>>,
}

#[derive(Debug)]
struct SchubertData {
    words: Vec<Word>,
    /// Row `b` holds the Schubert coordinates of basis monomial `b`.
    inverse: Vec<Vec<BigInt>>,
}

fn subsets_of_size(n: usize, size: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            cur.push(i);
            rec(i + 1, n, size, cur, out);
            cur.pop();
        }
    }
    rec(1, n, size, &mut Vec::new(), &mut out);
    out
}

fn cache() -> &'static Mutex<HashMap<RingSpec, Arc<Quotient>>> {
    static CACHE: OnceLock<Mutex<HashMap<RingSpec, Arc<Quotient>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Quotient {
    pub fn new(spec: RingSpec) -> Result<Quotient> {
        let spec = spec.validated()?;
        let n = spec.n();
        let basis = standard_monomial_basis(&spec);
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        let mut skip_reducers = HashMap::new();
        for s in subsets_of_size(n, spec.skip_size()) {
            let reducer = demazure_char(&reverse_skip_composition(&s, n)?).reverse_vars();
            let xs = skip_monomial(&s, n)?;
            let (lead, c) = reducer.lex_leading()?;
            if lead != xs || !c.is_one() {
                return Err(Error::Falsified(format!("leading term of kappa_gamma(S)*(x*) for S = {s:?} is {c} x^{lead:?}")));
            }
            skip_reducers.insert(s, reducer);
        }
        let power_reducers = match spec {
            RingSpec::T { k, .. } => (1..=n)
                .map(|i| complete_sym(k + i, &(i..=n).collect::<Vec<_>>(), n))
                .collect(),
            _ => Vec::new(),
        };
        Ok(Quotient { spec, basis, index, skip_reducers, power_reducers, schubert_inverse: OnceLock::new() })
    }

    /// A process-wide shared instance.
    pub fn shared(spec: RingSpec) -> Result<Arc<Quotient>> {
        let spec = spec.validated()?;
        if let Some(q) = cache().lock().unwrap_or_else(|e| e.into_inner()).get(&spec) {
            return Ok(q.clone());
        }
        let q = Arc::new(Quotient::new(spec)?);
        Ok(cache().lock().unwrap_or_else(|e| e.into_inner()).entry(spec).or_insert(q).clone())
    }

    pub fn spec(&self) -> RingSpec {
        self.spec
    }

    pub fn n(&self) -> usize {
        self.spec.n()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn basis_index(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    fn check_vars(&self, f: &MultiPoly) -> Result<()> {
        if f.nvars() != self.n() {
            return Err(Error::Param(format!("{}-variable polynomial in {}", f.nvars(), self.spec)));
        }
        Ok(())
    }

    pub fn normal_form(&self, f: &MultiPoly) -> Result<MultiPoly> {
        self.check_vars(f)?;
        let n = self.n();
        let degree = f.degree().unwrap_or(0) as usize;
        let cap = 10 * crate::qseries::binomial(degree + n, n).to_string().parse::<usize>().unwrap_or(usize::MAX / 20) + 1000;
        let mut work = f.clone();
        let mut out = MultiPoly::zero(n);
        let size = self.spec.skip_size();
        for _ in 0..cap {
            let Some((m, c)) = work.pop_leading() else {
                return Ok(out);
            };
            if self.index.contains_key(&m) {
                out.add_term(m, c);
                continue;
            }
            if let Some(i) = (1..=n).find(|&i| m[i - 1] >= self.spec.power_bound(i)) {
                if let RingSpec::T { .. } = self.spec {
                    let mut rest = m.clone();
                    rest[i - 1] -= self.spec.power_bound(i);
                    let h = &self.power_reducers[i - 1];
                    work.add_term(m, c.clone());
                    work.add_scaled_shift(h, &rest, &-c);
                }
                continue;
            }
            let s = find_skip(&m, size).expect("nonstandard monomial has a skip set");
            let xs = skip_monomial(&s, n)?;
            let rest: Monomial = m.iter().zip(&xs).map(|(a, b)| a - b).collect();
            work.add_term(m, c.clone());
            work.add_scaled_shift(&self.skip_reducers[&s], &rest, &-c);
        }
        Err(Error::NoTermination(cap))
    }

    /// Coordinates of `NF(f)` in the standard basis.
    pub fn coords(&self, f: &MultiPoly) -> Result<Vec<BigInt>> {
        let nf = self.normal_form(f)?;
        let mut v = vec![BigInt::zero(); self.basis.len()];
        for (m, c) in nf.terms() {
            v[self.index[m]] = c.clone();
        }
        Ok(v)
    }

    pub fn ideal_member(&self, f: &MultiPoly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn hilbert_series(&self) -> QPoly {
        let mut counts: Vec<i64> = Vec::new();
        for m in &self.basis {
            let d = m.iter().sum::<u32>() as usize;
            if counts.len() <= d {
                counts.resize(d + 1, 0);
            }
            counts[d] += 1;
        }
        QPoly::from_coeffs(counts)
    }

    /// `sum_d q^d tr(p | degree d)`, where `p` acts by `x_i -> x_{p(i)}`.
    pub fn graded_trace(&self, p: &Perm) -> Result<QPoly> {
        let mut counts: Vec<BigInt> = Vec::new();
        for b in &self.basis {
            let image = MultiPoly::monomial(b.clone(), 1).act(p)?;
            let c = self.normal_form(&image)?.coeff(b);
            let d = b.iter().sum::<u32>() as usize;
            if counts.len() <= d {
                counts.resize(d + 1, BigInt::zero());
            }
            counts[d] += c;
        }
        Ok(QPoly::from_coeffs(counts))
    }

    fn schubert_data(&self) -> Result<Arc<SchubertData>> {
        let RingSpec::R { n, k } = self.spec else {
            return Err(Error::Param(format!("Schubert basis is only defined for R(n,k), not {}", self.spec)));
        };
        self.schubert_inverse
            .get_or_init(|| {
                let words = enumerate_fubini(n, k)?;
                let rows: Vec<Vec<BigInt>> =
                    words.iter().map(|w| self.coords(&schubert_word(w))).collect::<Result<_>>()?;
                let inverse = integral_inverse(&rows)?;
                Ok(Arc::new(SchubertData { words, inverse }))
            })
            .clone()
    }

    /// The Schubert words of `R(n,k)` in lex order.
    pub fn schubert_words(&self) -> Result<Vec<Word>> {
        Ok(self.schubert_data()?.words.clone())
    }

    /// Coordinates of the basis monomials in the Schubert basis, one row per monomial.
    pub fn schubert_inverse_matrix(&self) -> Result<Vec<Vec<BigInt>>> {
        Ok(self.schubert_data()?.inverse.clone())
    }

    /// The integers `c_w` with `f = sum c_w S_w` in `R(n,k)`, nonzero ones only.
    pub fn schubert_expand(&self, f: &MultiPoly) -> Result<Expansion> {
        let data = self.schubert_data()?;
        let v = self.coords(f)?;
        let mut out = BTreeMap::new();
        for (j, w) in data.words.iter().enumerate() {
            let c: BigInt = v.iter().zip(&data.inverse).map(|(a, row)| a * &row[j]).sum();
            if !c.is_zero() {
                out.insert(w.clone(), c);
            }
        }
        Ok(Expansion(out))
    }

    pub fn structure_constants(&self, u: &Word, v: &Word) -> Result<Expansion> {
        self.schubert_expand(&(&schubert_word(u) * &schubert_word(v)))
    }
}

/// Integer coefficients in the Schubert basis, keyed by word.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expansion(pub BTreeMap<Word, BigInt>);

impl Expansion {
    pub fn get(&self, w: &str) -> BigInt {
        self.0.iter().find(|(k, _)| k.to_string() == w).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(word, coefficient)` with words as strings.
    pub fn pairs(&self) -> Vec<(String, String)> {
        self.0.iter().map(|(w, c)| (w.to_string(), c.to_string())).collect()
    }
}

impl Serialize for Expansion {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for (w, c) in &self.0 {
            map.serialize_entry(&w.to_string(), &crate::qseries::JsonInt(c))?;
        }
        map.end()
    }
}

/// `structure_constants` for all pairs, as CSV with one row per `(u, v)` and
/// one column per word of `W_{n,k}`.
pub fn structure_constants_csv(q: &Quotient) -> Result<String> {
    let words = q.schubert_words()?;
    let mut out = String::from("u,v");
    for w in &words {
        out.push(',');
        out.push_str(&w.to_string());
    }
    out.push('\n');
    for u in &words {
        for v in &words {
            let e = q.structure_constants(u, v)?;
            out.push_str(&format!("{u},{v}"));
            for w in &words {
                out.push(',');
                out.push_str(&e.0.get(w).cloned().unwrap_or_default().to_string());
            }
            out.push('\n');
        }
    }
    Ok(out)
}

/// Inverse of a square integer matrix by exact rational elimination, required
/// to be integral.
pub fn integral_inverse(rows: &[Vec<BigInt>]) -> Result<Vec<Vec<BigInt>>> {
    let size = rows.len();
    if rows.iter().any(|r| r.len() != size) {
        return Err(Error::Singular(format!("{size} rows but a row of length {}", rows.first().map_or(0, Vec::len))));
    }
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row: Vec<BigRational> = r.iter().map(|x| BigRational::from_integer(x.clone())).collect();
            row.extend((0..size).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for col in 0..size {
        let pivot = (col..size)
            .filter(|&r| !a[r][col].is_zero())
            .min_by_key(|&r| a[r][col].abs())
            .ok_or_else(|| Error::Singular(format!("no pivot in column {col}")))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        let pivot_row = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *x -= &factor * p;
                }
            }
        }
    }
    a.into_iter()
        .map(|row| {
            row[size..]
                .iter()
                .map(|x| {
                    if x.is_integer() {
                        Ok(x.to_integer())
                    } else {
                        Err(Error::Falsified(format!("non-integral inverse entry {x}")))
                    }
                })
                .collect()
        })
        .collect()
}
